//! Property tests for the algebraic invariants of the lattice, bridge,
//! torus and cube operations.

use proptest::prelude::*;

use tileforge_core::bridges::{folded_bridge, product_tiling};
use tileforge_core::cubes::{
    contraction_holds, interior_components, min_component_distance, real_folded_bridge,
    spiral_bridge, stacking, CubeSet,
};
use tileforge_core::lattice::{
    cartesian_product, connected_components, minkowski_sum, Connectivity, LatticeSet, Point,
};
use tileforge_core::rational::RationalVector;
use tileforge_core::spectral::{coset_filter, difference_hits_new_zeros};
use tileforge_core::torus::{verify_tiling, FiniteAbelianGroup};

fn arb_set(dim: usize, max_points: usize, span: i64) -> impl Strategy<Value = LatticeSet> {
    prop::collection::vec(
        prop::collection::vec(-span..=span, dim),
        1..=max_points,
    )
    .prop_map(move |rows| LatticeSet::from_rows(dim, &rows).unwrap())
}

fn arb_set_any_dim(max_dim: usize) -> impl Strategy<Value = LatticeSet> {
    (1..=max_dim).prop_flat_map(|d| arb_set(d, 8, 6))
}

proptest! {
    #[test]
    fn minkowski_commutative(f in arb_set_any_dim(3), g in arb_set_any_dim(3)) {
        prop_assume!(f.dim() == g.dim());
        let (ab, da) = minkowski_sum(&f, &g).unwrap();
        let (ba, db) = minkowski_sum(&g, &f).unwrap();
        prop_assert_eq!(ab, ba);
        prop_assert_eq!(da, db);
    }

    #[test]
    fn minkowski_associative(
        a in arb_set(2, 5, 4),
        b in arb_set(2, 5, 4),
        c in arb_set(2, 5, 4),
    ) {
        let (ab, _) = minkowski_sum(&a, &b).unwrap();
        let (ab_c, _) = minkowski_sum(&ab, &c).unwrap();
        let (bc, _) = minkowski_sum(&b, &c).unwrap();
        let (a_bc, _) = minkowski_sum(&a, &bc).unwrap();
        prop_assert_eq!(ab_c, a_bc);
    }

    #[test]
    fn minkowski_identity(f in arb_set_any_dim(3)) {
        let zero = LatticeSet::new(f.dim(), [Point::zero(f.dim())]).unwrap();
        let (sum, direct) = minkowski_sum(&f, &zero).unwrap();
        prop_assert_eq!(sum, f);
        prop_assert!(direct);
    }

    #[test]
    fn components_partition(f in arb_set_any_dim(3)) {
        for mode in [Connectivity::Moore, Connectivity::Axis] {
            let comps = connected_components(&f, mode).unwrap();
            let mut all: Vec<Point> = comps.iter().flat_map(|c| c.points().to_vec()).collect();
            all.sort();
            prop_assert_eq!(&all[..], f.points(), "union is the input");
            all.dedup();
            prop_assert_eq!(all.len(), f.len(), "components are disjoint");
        }
    }

    #[test]
    fn components_translation_invariant(
        f in arb_set(2, 8, 5),
        tx in -10i64..=10,
        ty in -10i64..=10,
    ) {
        let t = Point(vec![tx, ty]);
        let g = f.translate(&t);
        for mode in [Connectivity::Moore, Connectivity::Axis] {
            let cf = connected_components(&f, mode).unwrap();
            let cg = connected_components(&g, mode).unwrap();
            prop_assert_eq!(cf.len(), cg.len());
            // Same component shapes up to the translation.
            for (a, b) in cf.iter().zip(&cg) {
                prop_assert_eq!(&a.translate(&t), b);
            }
        }
    }

    #[test]
    fn axis_refines_moore(f in arb_set_any_dim(3)) {
        let moore = connected_components(&f, Connectivity::Moore).unwrap();
        let axis = connected_components(&f, Connectivity::Axis).unwrap();
        prop_assert!(axis.len() >= moore.len());
    }

    #[test]
    fn folded_bridge_connects_and_counts(f in arb_set_any_dim(3)) {
        let fb = folded_bridge(&f).unwrap();
        prop_assert_eq!(fb.set.len(), 2 * fb.path_len * f.len());
        let comps = connected_components(&fb.set, Connectivity::Moore).unwrap();
        prop_assert_eq!(comps.len(), 1, "folded bridge output is connected");
        let x_comps =
            connected_components(&fb.spec.offsets(), Connectivity::Moore).unwrap();
        prop_assert_eq!(x_comps.len(), 1, "offset set X is connected");
    }
}

fn arb_group() -> impl Strategy<Value = FiniteAbelianGroup> {
    prop_oneof![
        (2i64..=12).prop_map(|n| FiniteAbelianGroup::cyclic(n).unwrap()),
        ((2i64..=4), (2i64..=4))
            .prop_map(|(a, b)| FiniteAbelianGroup::new(vec![a, b]).unwrap()),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn verify_tiling_symmetry(g in arb_group(), seed in 0u64..1000) {
        // Derive a divisor pair deterministically from the seed.
        let order = g.order() as i64;
        let divisors: Vec<i64> = (1..=order).filter(|d| order % d == 0).collect();
        let k = divisors[(seed % divisors.len() as u64) as usize];
        let f = LatticeSet::new(
            g.dim(),
            (0..k).map(|i| g.point_at((i as u64 * (seed + 1) % g.order()) as usize)),
        ).unwrap();
        let a = LatticeSet::new(
            g.dim(),
            (0..order / k).map(|i| g.point_at((i as u64 * (seed + 3) % g.order()) as usize)),
        ).unwrap();
        prop_assume!(f.len() == k as usize && a.len() == (order / k) as usize);
        let fa = verify_tiling(&f, &a, &g).unwrap();
        let af = verify_tiling(&a, &f, &g).unwrap();
        prop_assert_eq!(fa, af);
    }

    #[test]
    fn tiling_product_closure(shift1 in 0i64..6, shift2 in 0i64..4) {
        let g1 = FiniteAbelianGroup::cyclic(6).unwrap();
        let f1 = LatticeSet::from_i64s(&[0, 3]).translate(&Point(vec![shift1]));
        let a1 = LatticeSet::from_i64s(&[0, 1, 2]);
        let g2 = FiniteAbelianGroup::cyclic(4).unwrap();
        let f2 = LatticeSet::from_i64s(&[0, 1]).translate(&Point(vec![shift2]));
        let a2 = LatticeSet::from_i64s(&[0, 2]);
        prop_assert!(verify_tiling(&f1, &a1, &g1).unwrap());
        prop_assert!(verify_tiling(&f2, &a2, &g2).unwrap());
        let f = cartesian_product(&f1, &f2);
        let a = product_tiling(&a1, &a2);
        prop_assert!(verify_tiling(&f, &a, &g1.product(&g2)).unwrap());
    }
}

fn arb_cubeset_two_components() -> impl Strategy<Value = CubeSet> {
    // Two clusters of 1..=2 integer-cornered cubes, pushed apart.
    (
        1usize..=2,
        prop::collection::vec((0i64..=1, 0i64..=1), 1..=2),
        prop::collection::vec((0i64..=1, 0i64..=1), 1..=2),
        3i64..=8,
    )
        .prop_filter_map("needs exactly two components", |(d, c1, c2, gap)| {
            let take = |v: &[(i64, i64)]| -> Vec<Vec<i64>> {
                v.iter().map(|&(x, y)| {
                    let mut c = vec![x, y];
                    c.truncate(d.max(1));
                    c
                }).collect()
            };
            let mut corners = take(&c1);
            for c in take(&c2) {
                let mut c = c;
                c[0] += gap;
                corners.push(c);
            }
            let set = CubeSet::from_integer_corners(d.clamp(1, 2), &corners).ok()?;
            (interior_components(&set).ok()?.len() == 2).then_some(set)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn real_bridge_connects(omega in arb_cubeset_two_components()) {
        let rb = real_folded_bridge(&omega, None).unwrap();
        prop_assert_eq!(rb.set.dim(), omega.dim() + 2);
        prop_assert_eq!(rb.set.volume(), 2 * rb.path_len as u64 * omega.volume());
        prop_assert_eq!(interior_components(&rb.set).unwrap().len(), 1);
    }

    #[test]
    fn spiral_terminates_and_contracts(omega in arb_cubeset_two_components()) {
        let sb = spiral_bridge(&omega, 100).unwrap();
        prop_assert_eq!(interior_components(&sb.set).unwrap().len(), 1);
        let mut expected_volume = omega.volume();
        for round in &sb.log {
            expected_volume *= round.copies as u64;
            if let Some(after2) = round.dist2_after {
                if round.dist2 >= tileforge_core::rational::Rat::from_integer(4) {
                    prop_assert!(contraction_holds(round.dist2, after2));
                }
            }
            if round.dist2 < tileforge_core::rational::Rat::from_integer(4) {
                prop_assert!(round.components_after < round.components_before);
            }
        }
        prop_assert_eq!(sb.set.volume(), expected_volume);
    }

    #[test]
    fn stacking_multiplies_volume(
        omega in arb_cubeset_two_components(),
        num in -3i64..=3,
        den in 1i64..=4,
        copies in 1usize..=4,
    ) {
        let mut nums = vec![num];
        nums.resize(omega.dim(), 1);
        let v = RationalVector::new(nums, den).unwrap();
        let s = stacking(&omega, &v, copies).unwrap();
        prop_assert_eq!(s.volume(), omega.volume() * copies as u64);
        prop_assert_eq!(s.dim(), omega.dim() + 1);
    }

    #[test]
    fn coset_filter_bound_and_exclusion(
        rows in prop::collection::vec((prop::collection::vec(-12i64..=12, 2), 1i64..=6), 1..=12),
        unum in prop::collection::vec(-4i64..=4, 2),
        uden in 1i64..=3,
        n in 1u32..=4,
    ) {
        let u = RationalVector::new(unum, uden).unwrap();
        prop_assume!(!u.is_zero());
        let pts: Vec<RationalVector> = rows
            .into_iter()
            .map(|(nums, den)| RationalVector::new(nums, den).unwrap())
            .collect();
        let out = coset_filter(&pts, &u, n).unwrap();
        prop_assert!(out.len() as u64 * n as u64 >= pts.len() as u64);
        for a in &out {
            for b in &out {
                let d = u.dot(&a.sub(b).unwrap()).unwrap();
                prop_assert!(!difference_hits_new_zeros(d, n));
            }
        }
        let again = coset_filter(&out, &u, n).unwrap();
        prop_assert_eq!(again.len(), out.len());
    }
}

#[test]
fn min_distance_exceeds_one() {
    // Distinct interior components of a valid cube set always sit at
    // center distance > 1.
    for corners in [
        vec![vec![0, 0], vec![1, 1]],
        vec![vec![0, 0], vec![2, 0]],
        vec![vec![0, 3], vec![4, 0], vec![9, 9]],
    ] {
        let set = CubeSet::from_integer_corners(2, &corners).unwrap();
        if interior_components(&set).unwrap().len() < 2 {
            continue;
        }
        let md = min_component_distance(&set).unwrap();
        assert!(md.dist2 > tileforge_core::rational::Rat::from_integer(1));
    }
}
