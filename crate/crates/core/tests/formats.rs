use pentachain::builtin;
use pentachain::exact::{fraction_string, parse_rational};
use pentachain::geometry::{assign_geometry, GeometryAssignment};
use pentachain::pachner::random_walk;
use pentachain::Triangulation;

#[test]
fn triangulation_text_round_trips() {
    for t in [builtin::s3(), builtin::rp3(), random_walk(&builtin::rp3(), 12, 3, 16)] {
        let text = t.to_text();
        let back = Triangulation::parse(&text).unwrap();
        assert_eq!(back.to_text(), text);
        assert_eq!(back.f_vector(), t.f_vector());
    }
}

#[test]
fn builtin_files_parse_with_comments() {
    assert!(builtin::S3_TEXT.contains('#'));
    assert_eq!(Triangulation::parse(builtin::RP3_TEXT).unwrap().tet_count(), 8);
}

#[test]
fn geometry_text_round_trips() {
    let t = builtin::rp3();
    let g = assign_geometry(&t, 8, 10).unwrap();
    let mut back = GeometryAssignment::parse(&g.to_text(), 4).unwrap();
    back.seed = g.seed;
    assert_eq!(back, g);
}

#[test]
fn rationals_print_as_fractions() {
    let r = parse_rational("-6/4").unwrap();
    assert_eq!(fraction_string(&r), "-3/2");
    assert_eq!(fraction_string(&parse_rational("5").unwrap()), "5/1");
}
