//! Randomised invariants across the library layers.

use std::f64::consts::{PI, SQRT_2};
use std::sync::OnceLock;

use approx::assert_relative_eq;
use proptest::prelude::*;

use genus2::chain::{build_chain, Chain, ChainParams};
use genus2::geometry::{
    make_canonical_double_torus, solid_distance, PolyLoop, Similarity, Transform,
};
use genus2::linking::{gauss_linking_number, linking_number_by_crossings};
use genus2::sequence::{
    component, involution_iota1, involution_iota2, membership, winding_omega, Address,
    MembershipResult,
};
use genus2::Vec3;

fn chain32() -> &'static Chain {
    static C: OnceLock<Chain> = OnceLock::new();
    C.get_or_init(|| build_chain(&ChainParams::new(1.0, 0.08, 32, None).unwrap()).unwrap())
}

fn chain288() -> &'static Chain {
    static C: OnceLock<Chain> = OnceLock::new();
    C.get_or_init(|| build_chain(&ChainParams::new(1.0, 0.08, 288, None).unwrap()).unwrap())
}

fn vec3(range: f64) -> impl Strategy<Value = Vec3> {
    (-range..range, -range..range, -range..range).prop_map(|(x, y, z)| Vec3::new(x, y, z))
}

prop_compose! {
    fn similarity()(axis in vec3(1.0), angle in 0.0..2.0 * PI, log_s in -1.0f64..1.0, t in vec3(5.0)) -> Similarity {
        let axis = if axis.norm() < 1e-3 { Vec3::z() } else { axis };
        Similarity::translation_by(t)
            .compose(&Similarity::rotation_about_line(Vec3::zeros(), axis, angle))
            .compose(&Similarity::scaling(10f64.powf(log_s)).unwrap())
    }
}

fn square(center: Vec3, u: Vec3, v: Vec3) -> PolyLoop {
    PolyLoop::new(vec![center + u + v, center - u + v, center - u - v, center + u - v]).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn composition_is_equivariant(s1 in similarity(), s2 in similarity(), x in vec3(3.0)) {
        let lhs = s1.compose(&s2).apply_point(&x);
        let rhs = s1.apply_point(&s2.apply_point(&x));
        prop_assert!((lhs - rhs).norm() <= 1e-10 * (1.0 + rhs.norm()));
    }

    #[test]
    fn inverse_undoes(s in similarity(), x in vec3(3.0)) {
        let back = s.inverse().apply_point(&s.apply_point(&x));
        prop_assert!((back - x).norm() <= 1e-10 * (1.0 + x.norm()));
    }

    #[test]
    fn solid_distance_scales(s in similarity(), shift in vec3(6.0)) {
        let x0 = make_canonical_double_torus(1.0, 0.08).unwrap();
        let y = x0.transformed(&Similarity::translation_by(shift + Vec3::new(0.0, 0.0, 3.0)));
        let d = solid_distance(&x0, &y);
        let ds = solid_distance(&x0.transformed(&s), &y.transformed(&s));
        prop_assert!((ds - s.scale() * d).abs() <= 1e-9 * (1.0 + ds));
    }

    #[test]
    fn linking_number_is_similarity_invariant(s in similarity(), c in 0.3f64..1.7, y0 in -0.7f64..0.7) {
        let a = square(Vec3::zeros(), Vec3::x(), Vec3::y());
        let b = square(Vec3::new(c, y0, 0.0), Vec3::x(), Vec3::z());
        let lk = gauss_linking_number(&a, &b).unwrap().lk;
        let moved = gauss_linking_number(&a.transformed(&s), &b.transformed(&s)).unwrap().lk;
        let crossed = linking_number_by_crossings(&a.transformed(&s), &b.transformed(&s)).unwrap().lk;
        prop_assert_eq!(lk.abs(), 1);
        prop_assert_eq!(moved, lk);
        prop_assert_eq!(crossed, lk);
    }

    #[test]
    fn linking_is_antisymmetric_under_reversal(c in 0.3f64..1.7, y0 in -0.7f64..0.7) {
        let a = square(Vec3::zeros(), Vec3::x(), Vec3::y());
        let b = square(Vec3::new(c, y0, 0.0), Vec3::x(), Vec3::z());
        let lk = gauss_linking_number(&a, &b).unwrap().lk;
        prop_assert_eq!(gauss_linking_number(&b, &a).unwrap().lk, lk);
        prop_assert_eq!(gauss_linking_number(&a.reversed(), &b).unwrap().lk, -lk);
    }

    #[test]
    fn involutions(x in vec3(10.0)) {
        prop_assert_eq!(involution_iota1(&involution_iota1(&x)), x);
        prop_assert_eq!(involution_iota2(&involution_iota2(&x)), x);
        let w = winding_omega(&x, 32).unwrap();
        prop_assert!((w.xy().norm() - x.xy().norm()).abs() <= 1e-12 * (1.0 + x.norm()));
        prop_assert_eq!(w.z, x.z);
    }

    #[test]
    fn diameter_law(word in prop::collection::vec(1usize..=32, 0..=3)) {
        let c = chain32();
        let comp = component(c, &Address(word.clone())).unwrap();
        let kn = c.params.k.powi(word.len() as i32);
        assert_relative_eq!(comp.map.scale(), kn, max_relative = 1e-12);
        assert_relative_eq!(comp.solid.diameter(), kn * c.x0().diameter(), max_relative = 1e-9);
    }

    #[test]
    fn core_points_are_found_with_their_address(
        word in prop::collection::vec(1usize..=288, 1..=3),
        t in 0.0f64..2.0,
        lift in -0.05f64..0.05,
    ) {
        let c = chain288();
        let target = component(c, &Address(word.clone())).unwrap();
        // a point on the left lobe's core edge leaving the terminal corner
        let seed = Vec3::new(-2.0 * SQRT_2, 0.0, 0.0) + Vec3::new(1.0, 1.0, 0.0) * (t / SQRT_2) + Vec3::new(0.0, 0.0, lift);
        let x = target.map.apply_point(&seed);
        match membership(c, &x, word.len()) {
            MembershipResult::Contained { prefix, depth } => {
                prop_assert_eq!(&prefix.0, &word);
                for n in 0..=depth {
                    let pre = Address(prefix.0[..n].to_vec());
                    prop_assert!(component(c, &pre).unwrap().solid.contains_point(&x));
                }
            }
            other => prop_assert!(false, "{:?}", other),
        }
    }

    #[test]
    fn membership_is_iota1_equivariant(x in vec3(3.0)) {
        let c = chain32();
        let a = membership(c, &x, 4);
        let b = membership(c, &involution_iota1(&x), 4);
        match (a, b) {
            (MembershipResult::EscapedAt(i), MembershipResult::EscapedAt(j)) => prop_assert_eq!(i, j),
            (MembershipResult::Contained { prefix: p, .. }, MembershipResult::Contained { prefix: q, .. }) => {
                let mirrored: Vec<usize> = p.0.iter().map(|j| 33 - j).collect();
                prop_assert_eq!(mirrored, q.0);
            }
            (a, b) => prop_assert!(false, "{:?} vs {:?}", a, b),
        }
    }
}
