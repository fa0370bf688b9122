//! Cross-module consistency checks: the projective (division-free) paths
//! against the independent elimination oracles, and classification tags
//! against exact rank computation.

use homsolve::bary::bary_triangle;
use homsolve::cross::{cross3, CofactorTable2, CofactorTable3};
use homsolve::geom::{line2, meet_lines2, meet_planes3, plane3, solve_nonhomogeneous, LinSystem};
use homsolve::homog::point2;
use homsolve::oracle::{cramer_solve, det, rank, DenseMatrix};
use homsolve::{ProjResult, ProjTag, Ring, Tolerance};
use num::rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Rat = BigRational;

fn rat(n: i64) -> Rat {
    Ring::from_i64(n)
}

/// Projectivized solve agrees with Cramer's rule exactly over rationals,
/// for every supported system size.
#[test]
fn projective_solver_matches_cramer_over_rationals() {
    let tol = Tolerance::default();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for n in 2..=4usize {
        let mut done = 0;
        while done < 150 {
            let a: Vec<Vec<Rat>> = (0..n)
                .map(|_| (0..n).map(|_| rat(rng.gen_range(-9..=9))).collect())
                .collect();
            let b: Vec<Rat> = (0..n).map(|_| rat(rng.gen_range(-9..=9))).collect();
            let sys = LinSystem::new(a, b).unwrap();
            let reference = match cramer_solve(&sys, &tol) {
                Ok(x) => x,
                Err(_) => continue, // singular draw; resample
            };
            let hom = solve_nonhomogeneous(&sys, &tol).unwrap();
            let hom = match hom {
                ProjResult::Regular(h) => h,
                other => panic!("nonsingular system classified as {:?}", other.tag()),
            };
            let w = hom[n].clone();
            for i in 0..n {
                assert_eq!(hom[i].clone() / w.clone(), reference[i]);
            }
            done += 1;
        }
    }
}

/// Join/meet duality: the meet of the join of (p,q) with the join of (p,r)
/// recovers p, and every meet lies on both of its defining lines.
#[test]
fn duality_round_trip_recovers_shared_point() {
    let tol = Tolerance::default();
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let mut done = 0;
    while done < 300 {
        let mut coord = || rng.gen_range(-50i128..=50);
        let p = point2(coord(), coord(), 1);
        let q = point2(coord(), coord(), 1);
        let r = point2(coord(), coord(), 1);
        let l1 = match homsolve::geom::join_points2(&p, &q, &tol) {
            ProjResult::Regular(l) | ProjResult::AtInfinity(l) => l,
            ProjResult::Degenerate => continue, // coincident draw
        };
        let l2 = match homsolve::geom::join_points2(&p, &r, &tol) {
            ProjResult::Regular(l) | ProjResult::AtInfinity(l) => l,
            ProjResult::Degenerate => continue,
        };
        let meet = meet_lines2(&l1, &l2, &tol);
        match meet {
            ProjResult::Regular(m) => {
                // Incidence with both lines is exact.
                for l in [&l1, &l2] {
                    let dot: i128 = (0..3).map(|i| l.components()[i] * m.components()[i]).sum();
                    assert_eq!(dot, 0);
                }
                assert!(m.proj_equivalent(&p, &tol), "round trip lost the shared point");
                done += 1;
            }
            // q, r collinear with p makes the two joins identical.
            _ => continue,
        }
    }
}

/// Classification tags agree with the exact rank of the stacked coefficient
/// matrix on constructed degenerate line and plane families.
#[test]
fn degeneracy_tags_match_oracle_rank() {
    let tol = Tolerance::default();
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..200 {
        let mut coef = || rng.gen_range(-9i128..=9);
        // Base line with a nonzero normal.
        let (a, b) = loop {
            let (a, b) = (coef(), coef());
            if a != 0 || b != 0 {
                break (a, b);
            }
        };
        let c = coef();
        let l1 = line2(a, b, c);
        let family = coef().rem_euclid(3);
        let l2 = match family {
            0 => line2(coef(), coef(), coef()),       // generic
            1 => line2(a, b, c + coef().abs() + 1),   // parallel, distinct
            _ => line2(3 * a, 3 * b, 3 * c),          // coincident
        };
        let stacked = DenseMatrix::from_rows(vec![
            l1.components().to_vec(),
            l2.components().to_vec(),
        ])
        .unwrap();
        let meet = meet_lines2(&l1, &l2, &tol);
        assert_eq!(
            meet.tag() == ProjTag::Degenerate,
            rank(&stacked) < 2,
            "line family {family}: tag {:?} vs rank {}",
            meet.tag(),
            rank(&stacked)
        );
        if family == 1 {
            assert_eq!(meet.tag(), ProjTag::AtInfinity);
        }
    }

    // Plane triples: a pencil (three planes through one line) must be
    // Degenerate; two parallel planes plus a transversal must be AtInfinity.
    let mut coef = || rng.gen_range(-5i128..=5);
    for _ in 0..100 {
        let p1 = plane3(coef(), coef(), coef(), coef());
        let p2 = plane3(coef(), coef(), coef(), coef());
        let s1 = coef();
        let s2 = coef();
        // p3 = s1*p1 + s2*p2 lies in the pencil spanned by p1 and p2.
        let pencil: [i128; 4] = std::array::from_fn(|i| {
            s1 * p1.components()[i] + s2 * p2.components()[i]
        });
        let p3 = plane3(pencil[0], pencil[1], pencil[2], pencil[3]);
        let stacked = DenseMatrix::from_rows(vec![
            p1.components().to_vec(),
            p2.components().to_vec(),
            p3.components().to_vec(),
        ])
        .unwrap();
        let meet = meet_planes3(&p1, &p2, &p3, &tol);
        assert_eq!(meet.tag(), ProjTag::Degenerate);
        assert!(rank(&stacked) < 3);
    }
}

/// Cofactor-table entries are exactly the oracle determinants of the
/// corresponding column submatrices.
#[test]
fn cofactor_tables_match_oracle_determinants() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for _ in 0..100 {
        let mut v = || -> [i128; 5] { std::array::from_fn(|_| rng.gen_range(-99..=99)) };
        let (a, b, c) = (v(), v(), v());
        let t2 = CofactorTable2::new(&a, &b);
        for i in 0..5 {
            for j in (i + 1)..5 {
                let m = DenseMatrix::from_rows(vec![vec![a[i], a[j]], vec![b[i], b[j]]]).unwrap();
                assert_eq!(t2.get(i, j), det(&m).unwrap());
            }
        }
        let t3 = CofactorTable3::new(&a, &b, &c);
        for i in 0..5 {
            for j in (i + 1)..5 {
                for k in (j + 1)..5 {
                    let m = DenseMatrix::from_rows(vec![
                        vec![a[i], a[j], a[k]],
                        vec![b[i], b[j], b[k]],
                        vec![c[i], c[j], c[k]],
                    ])
                    .unwrap();
                    assert_eq!(t3.get(i, j, k), det(&m).unwrap());
                }
            }
        }
    }
}

/// Barycentric weights match the elimination oracle's solution of the
/// homogeneous vertex system exactly, including non-unit denominators.
#[test]
fn bary_weights_match_oracle_solution() {
    let tol = Tolerance::default();
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    let mut done = 0;
    while done < 200 {
        let mut draw = |lo: i64, hi: i64| rat(rng.gen_range(lo..=hi));
        let pts: Vec<[Rat; 3]> = (0..4)
            .map(|_| [draw(-20, 20), draw(-20, 20), draw(1, 5)])
            .collect();
        let hom: Vec<_> = pts
            .iter()
            .map(|p| point2(p[0].clone(), p[1].clone(), p[2].clone()))
            .collect();
        let bary = match bary_triangle(&hom[0], &hom[1], &hom[2], &hom[3], &tol) {
            ProjResult::Regular(b) => b,
            _ => continue, // degenerate triangle or point configuration at infinity
        };
        let lambda = bary.to_weights(&tol).unwrap();
        // Oracle: solve rows (x / y / w of the three vertices) = query column.
        let a: Vec<Vec<Rat>> = (0..3)
            .map(|row| (0..3).map(|v| pts[v][row].clone()).collect())
            .collect();
        let b: Vec<Rat> = (0..3).map(|row| pts[3][row].clone()).collect();
        let reference = cramer_solve(&LinSystem::new(a, b).unwrap(), &tol).unwrap();
        for i in 0..3 {
            assert_eq!(lambda.lambda()[i], reference[i]);
        }
        done += 1;
    }
}

/// The dedicated 2D meet agrees with the generic homogeneous-kernel solver.
#[test]
fn meet_agrees_with_homogeneous_kernel() {
    let tol = Tolerance::default();
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    for _ in 0..200 {
        let mut coef = || rng.gen_range(-9i128..=9);
        let l1 = line2(coef(), coef(), coef());
        let l2 = line2(coef(), coef(), coef());
        let direct = meet_lines2(&l1, &l2, &tol);
        let kernel = homsolve::geom::solve_homogeneous(
            &[l1.components().to_vec(), l2.components().to_vec()],
            homsolve::GeomKind::Point,
            &tol,
        )
        .unwrap();
        assert_eq!(direct.tag(), kernel.tag());
        if let (Some(d), Some(k)) = (direct.value(), kernel.value()) {
            assert_eq!(d.components().to_vec(), cross3(l1.components(), l2.components()).to_vec());
            assert_eq!(d.components().as_slice(), k.as_slice());
        }
    }
}
