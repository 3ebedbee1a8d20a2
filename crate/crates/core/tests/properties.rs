use proptest::prelude::*;
use proptest::sample::Index;

use gray2::gray::{gray_colax, gray_colax_mor, hom_size_formula, GrayProduct};
use gray2::phi::phi_mor;
use gray2::poset::MaxChain;
use gray2::theta2::{DeltaMor, Theta2Mor, Theta2Obj};
use gray2::twocat::{realize, realize_digits, realize_encode, two_op, TwoCat};

fn obj(max_k: usize, max_n: usize) -> impl Strategy<Value = Theta2Obj> {
    prop::collection::vec(0..=max_n, 0..=max_k).prop_map(Theta2Obj::new)
}

fn pick<T: Clone>(xs: &[T], i: Index) -> Option<T> {
    (!xs.is_empty()).then(|| xs[i.index(xs.len())].clone())
}

/// Two composable Theta_2 maps `a -> b -> c`, when both hom-sets are nonempty.
fn composable(a: &Theta2Obj, b: &Theta2Obj, c: &Theta2Obj, i: Index, j: Index) -> Option<(Theta2Mor, Theta2Mor)> {
    Some((pick(&Theta2Mor::all(a, b), i)?, pick(&Theta2Mor::all(b, c), j)?))
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, t| acc * (n - t) / (t + 1))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn text_notation_roundtrips(o in obj(4, 5)) {
        let back: Theta2Obj = o.to_string().parse().unwrap();
        prop_assert_eq!(back, o);
    }

    #[test]
    fn shuffle_count_is_binomial(k in 0usize..6, m in 0usize..6) {
        let mc = MaxChain::new(k, m);
        prop_assert_eq!(mc.len(), binomial(k + m, k));
        let covers = mc.poset.covers();
        prop_assert!(covers.iter().all(|&(a, b)| mc.poset.leq(a, b) && a != b));
    }

    #[test]
    fn realization_digits_roundtrip(o in obj(3, 3), i in any::<Index>(), j in any::<Index>(), l in any::<Index>()) {
        prop_assume!(o.k() > 0);
        let x = i.index(o.k() + 1);
        let y = x + j.index(o.k() + 1 - x);
        let c = realize(&o);
        let size = c.hom(x, y).n_objects();
        let local = l.index(size);
        let digits = realize_digits(&o, x, y, local);
        prop_assert_eq!(realize_encode(&o, x, &digits), local);
    }

    #[test]
    fn gray_hom_sizes_match_formula(a in obj(2, 2), b in obj(2, 2)) {
        let g = GrayProduct::new(&a, &b);
        for i in 0..=a.k() {
            for j in 0..=b.k() {
                for i2 in 0..=a.k() {
                    for j2 in 0..=b.k() {
                        let got = g.cat.hom(g.object(i, j), g.object(i2, j2)).n_objects() as u64;
                        prop_assert_eq!(got, hom_size_formula(&a, &b, (i, j), (i2, j2)));
                    }
                }
            }
        }
    }

    #[test]
    fn gray_is_valid_and_locally_posetal(a in obj(2, 2), b in obj(2, 1)) {
        let c = gray_colax(&a, &b);
        prop_assert!(c.validate().is_ok());
        prop_assert!(c.is_posetal());
    }

    #[test]
    fn gray_is_functorial(
        a in obj(2, 1), b in obj(2, 1), c in obj(2, 1),
        p in obj(1, 1), q in obj(1, 1), r in obj(1, 1),
        i in any::<Index>(), j in any::<Index>(), k in any::<Index>(), l in any::<Index>(),
    ) {
        let Some((f1, f2)) = composable(&a, &b, &c, i, j) else { return Ok(()) };
        let Some((g1, g2)) = composable(&p, &q, &r, k, l) else { return Ok(()) };
        let whole = gray_colax_mor(&Theta2Mor::compose(&f2, &f1).unwrap(), &Theta2Mor::compose(&g2, &g1).unwrap());
        let parts = gray_colax_mor(&f1, &g1).then(&gray_colax_mor(&f2, &g2));
        prop_assert_eq!(whole, parts);
        let id = gray_colax_mor(&Theta2Mor::identity(&a), &Theta2Mor::identity(&p));
        prop_assert_eq!(id, gray2::twocat::TwoFunctor::identity(&gray_colax(&a, &p)));
    }

    #[test]
    fn phi_is_functorial(
        a in obj(2, 1), b in obj(2, 1), c in obj(2, 1),
        m0 in 0usize..3, m1 in 0usize..3, m2 in 0usize..3,
        i in any::<Index>(), j in any::<Index>(), k in any::<Index>(), l in any::<Index>(),
    ) {
        let Some((f1, f2)) = composable(&a, &b, &c, i, j) else { return Ok(()) };
        let mu1 = pick(&DeltaMor::all(m0, m1), k).unwrap();
        let mu2 = pick(&DeltaMor::all(m1, m2), l).unwrap();
        let whole = phi_mor(&Theta2Mor::compose(&f2, &f1).unwrap(), &DeltaMor::compose(&mu2, &mu1).unwrap());
        let parts = phi_mor(&f1, &mu1).then(&phi_mor(&f2, &mu2));
        prop_assert_eq!(whole, parts);
    }

    #[test]
    fn json_roundtrip(a in obj(2, 2), b in obj(1, 2)) {
        let c = gray_colax(&a, &b);
        let s = serde_json::to_string(&c).unwrap();
        let back: TwoCat = serde_json::from_str(&s).unwrap();
        prop_assert_eq!(back, c);
    }

    #[test]
    fn two_op_is_an_involution(a in obj(2, 2), b in obj(1, 1)) {
        let c = gray_colax(&a, &b);
        prop_assert_eq!(two_op(&two_op(&c)), c);
    }
}
