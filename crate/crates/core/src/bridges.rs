//! Discrete connectification: snake sequences, component-visiting paths,
//! folded bridges and the generalized product operator.
//!
//! The folded bridge lifts a finite F ⊂ Z^d to a connected F' ⊂ Z^{d+2}
//! with |F'| = 2n|F|, where n is the length of a moore-adjacent path
//! visiting one representative of every connected component of F. The
//! lift is F' = (F × {0}²) ⊕ X with X pairing the path against a
//! two-row boustrophedon ("snake") ordering of {0..n-1} × {0,1}.

use crate::error::{Error, Result};
use crate::lattice::{
    cartesian_product, connected_components, minkowski_sum, Connectivity, LatticeSet, Point,
};

/// Offset data (v_j, s_j) for the generalized product operator.
///
/// `path` holds the v_j ∈ Z^d (arbitrary), `shape` the s_j ∈ Z^k
/// (pairwise distinct, same count). The combined offsets
/// X = {(v_j, s_j)} live in Z^{d+k}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BridgeSpec {
    pub path: Vec<Point>,
    pub shape: Vec<Point>,
}

impl BridgeSpec {
    pub fn new(path: Vec<Point>, shape: Vec<Point>) -> Result<Self> {
        let spec = BridgeSpec { path, shape };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.path.len() != self.shape.len() {
            return Err(Error::InvalidBridgeSpec(format!(
                "path has {} entries, shape has {}",
                self.path.len(),
                self.shape.len()
            )));
        }
        if self.path.is_empty() {
            return Err(Error::InvalidBridgeSpec("no offsets".into()));
        }
        let d = self.path[0].dim();
        let k = self.shape[0].dim();
        if self.path.iter().any(|p| p.dim() != d) {
            return Err(Error::InvalidBridgeSpec("ragged path dimensions".into()));
        }
        if self.shape.iter().any(|s| s.dim() != k) {
            return Err(Error::InvalidBridgeSpec("ragged shape dimensions".into()));
        }
        let mut seen = self.shape.clone();
        seen.sort();
        seen.dedup();
        if seen.len() != self.shape.len() {
            return Err(Error::InvalidBridgeSpec(
                "shape points must be pairwise distinct".into(),
            ));
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.path.len()
    }

    pub fn is_empty(&self) -> bool {
        self.path.is_empty()
    }

    pub fn path_dim(&self) -> usize {
        self.path[0].dim()
    }

    pub fn shape_dim(&self) -> usize {
        self.shape[0].dim()
    }

    /// The combined offset set X = {(v_j, s_j)} ⊂ Z^{d+k}.
    pub fn offsets(&self) -> LatticeSet {
        LatticeSet::new(
            self.path_dim() + self.shape_dim(),
            self.path
                .iter()
                .zip(&self.shape)
                .map(|(v, s)| v.concat(s)),
        )
        .expect("offsets are dimension-consistent by validation")
    }
}

/// The two-row boustrophedon ordering of {0..n-1} × {0,1}:
/// (0,0),(1,0),…,(n-1,0),(n-1,1),…,(0,1). Consecutive entries are
/// moore-adjacent.
pub fn snake_sequence(n: usize) -> Result<Vec<Point>> {
    if n < 1 {
        return Err(Error::InvalidArgument("snake length must be >= 1".into()));
    }
    let mut seq = Vec::with_capacity(2 * n);
    for i in 0..n {
        seq.push(Point(vec![i as i64, 0]));
    }
    for i in (0..n).rev() {
        seq.push(Point(vec![i as i64, 1]));
    }
    Ok(seq)
}

/// A moore-adjacent path visiting one representative of every connected
/// component of a set, with the set translated so the path starts at 0.
#[derive(Debug, Clone)]
pub struct ComponentPath {
    /// Input translated by -a_0, so the first representative is the origin.
    pub translated: LatticeSet,
    /// Moore-adjacent path v_0 = 0, …, v_{n-1} = last representative.
    pub path: Vec<Point>,
    /// Representatives in visiting order (translated coordinates).
    pub representatives: Vec<Point>,
    /// The translation that was subtracted (a_0 in original coordinates).
    pub offset: Point,
}

/// Chebyshev geodesic from `from` to `to`, excluding the start point.
/// Every step moves each unsettled coordinate by ±1 toward the target.
fn geodesic_steps(from: &Point, to: &Point) -> Vec<Point> {
    let mut cur = from.clone();
    let mut out = Vec::new();
    while cur != *to {
        for i in 0..cur.dim() {
            cur.0[i] += (to.0[i] - cur.0[i]).signum();
        }
        out.push(cur.clone());
    }
    out
}

/// Builds the component-visiting path for `f`.
///
/// Representatives are the lexicographically smallest point of each
/// component; components are visited greedily by nearest remaining
/// representative (Chebyshev metric, ties to the lexicographically
/// smaller one), starting from the component of the global minimum.
pub fn component_path(f: &LatticeSet) -> Result<ComponentPath> {
    let comps = connected_components(f, Connectivity::Moore)?;
    let mut reps: Vec<Point> = comps.iter().map(|c| c.points()[0].clone()).collect();

    // comps[0] contains the global lexicographic minimum.
    let a0 = reps[0].clone();
    let mut order = vec![reps.remove(0)];
    while !reps.is_empty() {
        let cur = order.last().unwrap();
        let mut best = 0;
        for i in 1..reps.len() {
            let (di, db) = (cur.chebyshev(&reps[i]), cur.chebyshev(&reps[best]));
            if di < db || (di == db && reps[i] < reps[best]) {
                best = i;
            }
        }
        order.push(reps.remove(best));
    }

    let neg_a0 = Point(a0.0.iter().map(|c| -c).collect());
    let translated = f.translate(&neg_a0);
    let representatives: Vec<Point> = order.iter().map(|r| r.sub(&a0)).collect();

    let mut path = vec![Point::zero(f.dim())];
    for w in representatives.windows(2) {
        path.extend(geodesic_steps(&w[0], &w[1]));
    }
    Ok(ComponentPath {
        translated,
        path,
        representatives,
        offset: a0,
    })
}

/// Result of the folded-bridge construction.
#[derive(Debug, Clone)]
pub struct FoldedBridge {
    /// The connected lift F' ⊂ Z^{d+2}, |F'| = 2n|F|.
    pub set: LatticeSet,
    /// Offsets X as a 2n-entry spec (usable with [`generalized_product`]).
    pub spec: BridgeSpec,
    /// Path length n.
    pub path_len: usize,
    /// Translation applied to the input before bridging.
    pub offset: Point,
}

/// Folded bridge F ↦ (F × {0}²) ⊕ X over the component path of F.
///
/// X = {(0,s_0),…,(0,s_{n-1}), (v_0,s_n),…,(v_{n-1},s_{2n-1})} with s the
/// snake sequence of the path length n. The sum is direct, so
/// |F'| = 2n|F|, and F' is moore-connected.
pub fn folded_bridge(f: &LatticeSet) -> Result<FoldedBridge> {
    let cp = component_path(f)?;
    let n = cp.path.len();
    let snake = snake_sequence(n)?;

    let zero = Point::zero(f.dim());
    let mut path = vec![zero; n];
    path.extend(cp.path.iter().cloned());
    let spec = BridgeSpec::new(path, snake)?;

    let set = generalized_product(&cp.translated, &spec)?;
    debug_assert_eq!(set.len(), f.len() * 2 * n);
    Ok(FoldedBridge {
        set,
        spec,
        path_len: n,
        offset: cp.offset,
    })
}

/// The product operator F ↦ (F × {0}^k) ⊕ X for offsets X = {(v_j, s_j)}
/// with pairwise distinct s_j. The sum is direct: each s-layer carries a
/// translate of F, so |result| = |F|·n.
pub fn generalized_product(f: &LatticeSet, spec: &BridgeSpec) -> Result<LatticeSet> {
    spec.validate()?;
    if f.dim() != spec.path_dim() {
        return Err(Error::Dimension(f.dim(), spec.path_dim()));
    }
    let zero_block = LatticeSet::new(spec.shape_dim(), [Point::zero(spec.shape_dim())])?;
    let embedded = cartesian_product(f, &zero_block);
    let (sum, direct) = minkowski_sum(&embedded, &spec.offsets())?;
    debug_assert!(direct || f.is_empty());
    Ok(sum)
}

/// Product translate set A × T, the tiling complement of a generalized
/// product when A tiles by F and T tiles by the shape S.
pub fn product_tiling(a: &LatticeSet, t: &LatticeSet) -> LatticeSet {
    cartesian_product(a, t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Connectivity;

    fn set(dim: usize, rows: &[&[i64]]) -> LatticeSet {
        LatticeSet::new(dim, rows.iter().map(|r| Point(r.to_vec()))).unwrap()
    }

    #[test]
    fn snake_single_column() {
        let s = snake_sequence(1).unwrap();
        assert_eq!(s, vec![Point(vec![0, 0]), Point(vec![0, 1])]);
    }

    #[test]
    fn snake_three() {
        let s = snake_sequence(3).unwrap();
        let expected: Vec<Point> = [[0, 0], [1, 0], [2, 0], [2, 1], [1, 1], [0, 1]]
            .iter()
            .map(|c| Point(c.to_vec()))
            .collect();
        assert_eq!(s, expected);
    }

    #[test]
    fn snake_four_ends_at_origin_column() {
        let s = snake_sequence(4).unwrap();
        assert_eq!(s.len(), 8);
        assert_eq!(s[0], Point(vec![0, 0]));
        assert_eq!(s[7], Point(vec![0, 1]));
    }

    #[test]
    fn snake_properties() {
        for n in 1..=9 {
            let s = snake_sequence(n).unwrap();
            assert_eq!(s.len(), 2 * n);
            for w in s.windows(2) {
                assert!(w[0].chebyshev(&w[1]) == 1, "consecutive entries adjacent");
            }
            let mut cells: Vec<Point> = s.clone();
            cells.sort();
            cells.dedup();
            assert_eq!(cells.len(), 2 * n, "entries distinct");
            let rect = cartesian_product(
                &LatticeSet::from_i64s(&(0..n as i64).collect::<Vec<_>>()),
                &LatticeSet::from_i64s(&[0, 1]),
            );
            assert_eq!(LatticeSet::new(2, s).unwrap(), rect);
        }
        assert!(snake_sequence(0).is_err());
    }

    #[test]
    fn path_trivial_when_connected() {
        let f = LatticeSet::from_i64s(&[0, 1, 2]);
        let cp = component_path(&f).unwrap();
        assert_eq!(cp.path, vec![Point(vec![0])]);
        assert_eq!(cp.translated, f);
    }

    #[test]
    fn path_one_dimensional_gap() {
        let f = LatticeSet::from_i64s(&[0, 3]);
        let cp = component_path(&f).unwrap();
        assert_eq!(cp.translated, f);
        assert_eq!(
            cp.path,
            vec![Point(vec![0]), Point(vec![1]), Point(vec![2]), Point(vec![3])]
        );
        assert_eq!(cp.representatives, vec![Point(vec![0]), Point(vec![3])]);
    }

    #[test]
    fn path_postconditions_2d() {
        let f = set(2, &[&[0, 0], &[2, 3]]);
        let cp = component_path(&f).unwrap();
        // Geodesic length is the Chebyshev distance, so 4 points total.
        assert_eq!(cp.path.len(), 4);
        assert_eq!(cp.path[0], Point(vec![0, 0]));
        assert_eq!(*cp.path.last().unwrap(), Point(vec![2, 3]));
        for w in cp.path.windows(2) {
            assert_eq!(w[0].chebyshev(&w[1]), 1);
        }
        for rep in &cp.representatives {
            assert!(cp.path.contains(rep));
        }
        // Each representative sits in its own component of the
        // translated set, in visiting order.
        let comps = connected_components(&cp.translated, Connectivity::Moore).unwrap();
        for rep in &cp.representatives {
            assert_eq!(comps.iter().filter(|c| c.contains(rep)).count(), 1);
        }
        assert_eq!(cp.representatives.len(), comps.len());
    }

    #[test]
    fn path_translates_nonzero_start() {
        let f = LatticeSet::from_i64s(&[5, 8]);
        let cp = component_path(&f).unwrap();
        assert_eq!(cp.offset, Point(vec![5]));
        assert_eq!(cp.translated, LatticeSet::from_i64s(&[0, 3]));
        assert_eq!(cp.path.len(), 4);
    }

    #[test]
    fn folded_bridge_singleton() {
        let f = LatticeSet::from_i64s(&[0]);
        let fb = folded_bridge(&f).unwrap();
        assert_eq!(fb.path_len, 1);
        assert_eq!(fb.set, set(3, &[&[0, 0, 0], &[0, 0, 1]]));
    }

    #[test]
    fn folded_bridge_gap_three() {
        let f = LatticeSet::from_i64s(&[0, 3]);
        let fb = folded_bridge(&f).unwrap();
        assert_eq!(fb.path_len, 4);
        assert_eq!(fb.set.len(), 16);
        assert_eq!(fb.set.dim(), 3);
        let comps = connected_components(&fb.set, Connectivity::Moore).unwrap();
        assert_eq!(comps.len(), 1);
        // The v-carrying offsets at j = n and j = 2n-1.
        let x = fb.spec.offsets();
        assert!(x.contains(&Point(vec![0, 3, 1])));
        assert!(x.contains(&Point(vec![3, 0, 1])));
    }

    #[test]
    fn offsets_connected() {
        for f in [
            LatticeSet::from_i64s(&[0, 3]),
            LatticeSet::from_i64s(&[0, 1, 5, 9]),
            set(2, &[&[0, 0], &[4, 2], &[-3, 1]]),
        ] {
            let fb = folded_bridge(&f).unwrap();
            let comps = connected_components(&fb.spec.offsets(), Connectivity::Moore).unwrap();
            assert_eq!(comps.len(), 1, "X connected for {f:?}");
        }
    }

    #[test]
    fn generalized_product_identity_embedding() {
        let f = LatticeSet::from_i64s(&[0, 3]);
        let spec = BridgeSpec::new(vec![Point(vec![0])], vec![Point(vec![0])]).unwrap();
        let out = generalized_product(&f, &spec).unwrap();
        assert_eq!(out, set(2, &[&[0, 0], &[3, 0]]));
    }

    #[test]
    fn generalized_product_matches_folded_bridge() {
        let f = LatticeSet::from_i64s(&[0, 3]);
        let fb = folded_bridge(&f).unwrap();
        let cp = component_path(&f).unwrap();
        let again = generalized_product(&cp.translated, &fb.spec).unwrap();
        assert_eq!(again, fb.set);
    }

    #[test]
    fn generalized_product_cardinality() {
        // |result| = |f|·n whenever the shape points are distinct.
        let f = set(2, &[&[0, 0], &[5, -2], &[1, 7]]);
        let spec = BridgeSpec::new(
            vec![
                Point(vec![4, 4]),
                Point(vec![-1, 3]),
                Point(vec![0, 0]),
                Point(vec![2, -9]),
            ],
            vec![
                Point(vec![0]),
                Point(vec![2]),
                Point(vec![5]),
                Point(vec![-1]),
            ],
        )
        .unwrap();
        let out = generalized_product(&f, &spec).unwrap();
        assert_eq!(out.len(), f.len() * spec.len());
        assert_eq!(out.dim(), 3);
    }

    #[test]
    fn generalized_product_rejects_duplicate_shape() {
        let f = LatticeSet::from_i64s(&[0]);
        let spec = BridgeSpec {
            path: vec![Point(vec![0]), Point(vec![1])],
            shape: vec![Point(vec![0]), Point(vec![0])],
        };
        assert!(matches!(
            generalized_product(&f, &spec),
            Err(Error::InvalidBridgeSpec(_))
        ));
    }

    #[test]
    fn generalized_product_dimension_mismatch() {
        let f = set(2, &[&[0, 0]]);
        let spec = BridgeSpec::new(vec![Point(vec![0])], vec![Point(vec![0])]).unwrap();
        assert!(matches!(
            generalized_product(&f, &spec),
            Err(Error::Dimension(2, 1))
        ));
    }

    #[test]
    fn product_tiling_shapes() {
        let a = LatticeSet::from_i64s(&[0, 1, 2]);
        let t = set(2, &[&[0, 0]]);
        let prod = product_tiling(&a, &t);
        assert_eq!(prod, set(3, &[&[0, 0, 0], &[1, 0, 0], &[2, 0, 0]]));
        assert_eq!(product_tiling(&LatticeSet::from_i64s(&[0]), &t).len(), 1);
    }
}
