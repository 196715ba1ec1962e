use num_traits::Zero;
use pentachain::builtin;
use pentachain::exact::{int, Rational};
use pentachain::geometry::DEFAULT_RETRIES;
use pentachain::pachner::{apply_move, creates_loop, enumerate_sites, random_walk_traced, MoveKind};
use pentachain::torsion::invariant;
use pentachain::Triangulation;

fn abs_invariant(t: &Triangulation, seed: u64) -> Rational {
    invariant(t, seed, DEFAULT_RETRIES).unwrap().abs_invariant
}

#[test]
fn single_moves_on_projective_space() {
    let t = builtin::rp3();
    for kind in [MoveKind::TwoThree, MoveKind::OneFour] {
        for site in enumerate_sites(&t, kind) {
            if creates_loop(&t, site) {
                continue;
            }
            let u = apply_move(&t, site).unwrap();
            assert_eq!(abs_invariant(&u, 1), int(64), "{site}");
        }
    }
}

#[test]
fn single_moves_on_sphere() {
    let t = builtin::s3();
    for kind in [MoveKind::TwoThree, MoveKind::OneFour] {
        for site in enumerate_sites(&t, kind) {
            if creates_loop(&t, site) {
                continue;
            }
            let u = apply_move(&t, site).unwrap();
            assert_eq!(abs_invariant(&u, 2), int(1), "{site}");
            for back in enumerate_sites(&u, MoveKind::ThreeTwo)
                .into_iter()
                .chain(enumerate_sites(&u, MoveKind::FourOne))
            {
                let w = apply_move(&u, back).unwrap();
                assert_eq!(abs_invariant(&w, 3), int(1), "{site} then {back}");
            }
        }
    }
}

#[test]
fn walks_preserve_the_invariant() {
    for (t, expected) in [(builtin::s3(), int(1)), (builtin::rp3(), int(64))] {
        for seed in 0..5u64 {
            let walk = random_walk_traced(&t, 20, seed, 14);
            let kinds: Vec<String> = walk.moves.iter().map(|m| m.to_string()).collect();
            let got = abs_invariant(&walk.triangulation, seed + 100);
            assert!(!got.is_zero());
            assert_eq!(got, expected, "seed {seed}: {kinds:?}");
        }
    }
}
