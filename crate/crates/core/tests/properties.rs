use gitfan::afaces::{aface_test_naive, aface_test_reduced};
use gitfan::arith::{dot_rat, hnf, kernel_basis, snf, solve_affine, Int, IntMatrix, Rat};
use gitfan::cone::{Cone, Face};
use gitfan::poly::{Ideal, Monomial, Polynomial};
use num_traits::{Signed, Zero};
use proptest::prelude::*;

fn matrix(max_rows: usize, max_cols: usize, bound: i64) -> impl Strategy<Value = IntMatrix> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(move |(r, c)| {
        prop::collection::vec(prop::collection::vec(-bound..=bound, c), r)
            .prop_map(move |rows| IntMatrix::from_i64_rows(c, &rows).unwrap())
    })
}

fn int_vectors(
    dim: usize,
    count: std::ops::RangeInclusive<usize>,
) -> impl Strategy<Value = Vec<Vec<Int>>> {
    prop::collection::vec(prop::collection::vec(-3i64..=3, dim), count).prop_map(|vs| {
        vs.into_iter()
            .map(|v| v.into_iter().map(Int::from).collect())
            .collect()
    })
}

fn is_hnf(h: &IntMatrix) -> bool {
    let mut last_pivot: Option<usize> = None;
    let mut seen_zero = false;
    for i in 0..h.rows() {
        match (0..h.cols()).find(|&j| !h[(i, j)].is_zero()) {
            None => seen_zero = true,
            Some(p) => {
                if seen_zero || last_pivot.is_some_and(|q| p <= q) || !h[(i, p)].is_positive() {
                    return false;
                }
                if (0..i).any(|k| h[(k, p)].is_negative() || h[(k, p)] >= h[(i, p)]) {
                    return false;
                }
                last_pivot = Some(p);
            }
        }
    }
    true
}

fn rat_vec(v: &[Int]) -> Vec<Rat> {
    v.iter().map(|x| Rat::from_integer(x.clone())).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn hnf_is_canonical(m in matrix(6, 8, 20)) {
        let (h, u) = hnf(&m);
        prop_assert!(u.is_unimodular());
        prop_assert_eq!(u.mul(&m).unwrap(), h.clone());
        prop_assert!(is_hnf(&h));
        prop_assert_eq!(hnf(&h).0, h);
    }

    #[test]
    fn snf_identity(m in matrix(6, 8, 20)) {
        let (d, u, v) = snf(&m);
        prop_assert_eq!(u.mul(&m).unwrap().mul(&v).unwrap(), d.clone());
        prop_assert!(u.is_unimodular() && v.is_unimodular());
        let diag: Vec<Int> = (0..d.rows().min(d.cols())).map(|i| d[(i, i)].clone()).collect();
        for w in diag.windows(2) {
            prop_assert!(!w[0].is_negative());
            let divides = if w[0].is_zero() { w[1].is_zero() } else { (&w[1] % &w[0]).is_zero() };
            prop_assert!(divides);
        }
        prop_assert_eq!(diag.iter().filter(|x| !x.is_zero()).count(), m.rank());
    }

    #[test]
    fn kernel_is_kernel(m in matrix(5, 7, 6)) {
        let k = kernel_basis(&m);
        prop_assert_eq!(k.len(), m.cols() - m.rank());
        for v in &k {
            prop_assert!(m.apply(v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn affine_solutions(m in matrix(4, 6, 6), seed in prop::collection::vec(-5i64..=5, 6)) {
        let x0: Vec<Int> = seed[..m.cols()].iter().map(|&x| Int::from(x)).collect();
        let b = rat_vec(&m.apply(&x0));
        let a = m.to_rat();
        let sol = solve_affine(&a, &b).unwrap().expect("consistent by construction");
        for i in 0..m.rows() {
            prop_assert_eq!(dot_rat(m.row(i), &sol.particular), b[i].clone());
            for k in &sol.kernel {
                prop_assert!(dot_rat(m.row(i), k).is_zero());
            }
        }
        prop_assert_eq!(sol.kernel.len(), m.cols() - m.rank());
    }

    #[test]
    fn cone_descriptions_round_trip(gens in int_vectors(3, 1..=6)) {
        let c = Cone::from_generators(3, &gens).unwrap();
        for g in &gens {
            prop_assert!(c.contains(&rat_vec(g), false).unwrap());
        }
        let d = Cone::from_inequalities(3, c.inequalities(), c.equations()).unwrap();
        prop_assert_eq!(c.key(), d.key());
        let e = Cone::from_generators(3, &c.generators()).unwrap();
        prop_assert_eq!(c.key(), e.key());
        let mut shuffled: Vec<Vec<Int>> = gens.iter().rev().map(|g| g.iter().map(|x| x * 2).collect()).collect();
        shuffled.extend(gens.iter().cloned());
        let f = Cone::from_generators(3, &shuffled).unwrap();
        prop_assert_eq!(c.key(), f.key());
    }

    #[test]
    fn intersection_is_pointwise(a in int_vectors(3, 1..=5), b in int_vectors(3, 1..=5), pts in int_vectors(3, 8..=8)) {
        let ca = Cone::from_generators(3, &a).unwrap();
        let cb = Cone::from_generators(3, &b).unwrap();
        let cc = ca.intersect(&cb).unwrap();
        prop_assert!(ca.contains_cone(&cc) && cb.contains_cone(&cc));
        for p in pts.iter().chain(a.iter()).chain(b.iter()) {
            let q = rat_vec(p);
            prop_assert_eq!(
                cc.contains(&q, false).unwrap(),
                ca.contains(&q, false).unwrap() && cb.contains(&q, false).unwrap()
            );
        }
    }

    #[test]
    fn facets_are_faces(gens in int_vectors(3, 3..=6)) {
        let c = Cone::from_generators(3, &gens).unwrap();
        for f in c.facets() {
            prop_assert_eq!(f.dim() + 1, c.dim());
            prop_assert!(c.has_face(&f));
        }
    }

    #[test]
    fn reduced_aface_test_matches_naive(
        terms in prop::collection::vec(
            prop::collection::vec((prop::collection::vec(0u32..=2, 4), -3i64..=3), 2..=3),
            1..=2,
        ),
        mask in 0u64..16,
    ) {
        let gens: Vec<Polynomial> = terms
            .into_iter()
            .map(|ts| {
                Polynomial::from_terms(
                    4,
                    ts.into_iter()
                        .filter(|(_, c)| *c != 0)
                        .map(|(e, c)| (Monomial::new(e), Rat::from_integer(Int::from(c)))),
                )
            })
            .filter(|g| !g.is_zero())
            .collect();
        let ideal = Ideal::new(4, gens).unwrap();
        let face = Face::from_mask(4, mask);
        prop_assert_eq!(aface_test_reduced(&ideal, &face).unwrap(), aface_test_naive(&ideal, &face));
    }

    #[test]
    fn polynomial_display_round_trips(
        ts in prop::collection::vec((prop::collection::vec(0u32..=3, 5), -9i64..=9, 1i64..=4), 1..=5),
    ) {
        let f = Polynomial::from_terms(
            5,
            ts.into_iter().map(|(e, n, d)| (Monomial::new(e), Rat::new(Int::from(n), Int::from(d)))),
        );
        prop_assume!(!f.is_zero());
        let text = f.to_string();
        prop_assert_eq!(gitfan::poly::parse_polynomial(&text, 5).unwrap(), f);
    }
}
