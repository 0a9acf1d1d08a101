use std::collections::BTreeSet;

use fqg_core::classdims::{divisors, enumerate_multisets};
use fqg_core::coideal::{coideal_from_state, state_leq};
use fqg_core::models::{kac_paljutkin, kp_named_objects, sekine};
use fqg_core::{AlgElement, CycNum, Functional, HopfData};
use proptest::prelude::*;

fn functional(h: &HopfData, values: &[i64]) -> Functional {
    Functional::new(h.signature(), values.iter().map(|v| CycNum::from_int(*v)).collect()).unwrap()
}

fn element(h: &HopfData, values: &[i64]) -> AlgElement {
    AlgElement::from_coords(h.signature(), values.iter().map(|v| CycNum::frac(*v, 3)).collect()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn convolution_is_associative(a in prop::collection::vec(-4i64..5, 8), b in prop::collection::vec(-4i64..5, 8), c in prop::collection::vec(-4i64..5, 8)) {
        let h = kac_paljutkin();
        let (f, g, k) = (functional(&h, &a), functional(&h, &b), functional(&h, &c));
        let left = h.convolve(&h.convolve(&f, &g).unwrap(), &k).unwrap();
        let right = h.convolve(&f, &h.convolve(&g, &k).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn counit_is_convolution_unit(a in prop::collection::vec(-4i64..5, 8)) {
        let h = kac_paljutkin();
        let f = functional(&h, &a);
        let e = h.counit_functional();
        prop_assert_eq!(h.convolve(&e, &f).unwrap(), f.clone());
        prop_assert_eq!(h.convolve(&f, &e).unwrap(), f);
    }

    #[test]
    fn coproduct_is_multiplicative(a in prop::collection::vec(-3i64..4, 8), b in prop::collection::vec(-3i64..4, 8)) {
        let h = kac_paljutkin();
        let (x, y) = (element(&h, &a), element(&h, &b));
        let lhs = h.delta_of(&x.mul(&y).unwrap()).unwrap();
        let rhs = h.delta_of(&x).unwrap().mul(&h.delta_of(&y).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn haar_is_invariant_under_convolution(a in prop::collection::vec(-4i64..5, 18)) {
        let h = sekine(3).unwrap();
        let haar = h.solve_haar().unwrap();
        let f = functional(&h, &a);
        let scale = h.convolve(&f, &h.counit_functional()).unwrap().apply(h.unit());
        let expected = Functional::new(h.signature(), haar.values().iter().map(|v| v * &scale).collect()).unwrap();
        prop_assert_eq!(h.convolve(&f, &haar).unwrap(), expected.clone());
        prop_assert_eq!(h.convolve(&haar, &f).unwrap(), expected);
    }

    #[test]
    fn multisets_satisfy_both_constraints(pick in 0usize..4, mask in 0u32..256) {
        let (p, q) = [(7, 3), (3, 5), (5, 7), (3, 11)][pick];
        let n = 2 * p * q;
        let divs = divisors(n);
        let forbidden: BTreeSet<u64> = divs.iter().enumerate().filter(|(i, _)| mask & (1 << i) != 0).map(|(_, d)| *d).collect();
        let ms = enumerate_multisets(p, q, &forbidden).unwrap();
        for m in &ms {
            prop_assert_eq!(m.total(), n);
            prop_assert_eq!(m.dims[0], 1);
            prop_assert!(m.dims.iter().all(|d| n % d == 0));
            prop_assert!(m.non_unit().iter().all(|d| !forbidden.contains(d)));
        }
        let distinct: BTreeSet<_> = ms.iter().collect();
        prop_assert_eq!(distinct.len(), ms.len());
    }

    #[test]
    fn state_order_reverses_inclusion(i in 0usize..8, j in 0usize..8) {
        let h = kac_paljutkin();
        let named = kp_named_objects(&h);
        let (phi, psi) = (&named.rho[i], &named.rho[j]);
        let leq = state_leq(&h, phi, psi).unwrap();
        let (lphi, lpsi) = (coideal_from_state(&h, phi).unwrap(), coideal_from_state(&h, psi).unwrap());
        prop_assert_eq!(leq, lphi.subspace().contains(lpsi.subspace()).unwrap());
    }
}
