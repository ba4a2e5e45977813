//! Rational unit-cube complexes and the continuous connectification
//! operators: stacking, the continuous folded bridge and spiral bridges.
//!
//! A [`CubeSet`] is a finite union of pairwise interior-disjoint closed
//! unit cubes whose corners are rationals over a shared denominator L
//! (stored scaled by L, so all geometry is integer/rational-exact).
//! Interior connectivity, center distances and the stacking contraction
//! thresholds are all decided on exact values; floats only reach logs.

use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::bridges::snake_sequence;
use crate::error::{Error, Result};
use crate::lattice::{LatticeSet, Point};
use crate::rational::{ceil_sqrt, Rat, RationalVector};

/// Finite union of interior-disjoint unit cubes with corners in (1/L)·Z^d.
#[derive(Clone, PartialEq, Eq)]
pub struct CubeSet {
    dim: usize,
    denom: i64,
    /// Lower corners scaled by `denom`, lexicographically sorted.
    corners: Vec<Point>,
}

impl std::fmt::Debug for CubeSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "CubeSet(dim={}, denom={}, cubes={})",
            self.dim,
            self.denom,
            self.corners.len()
        )
    }
}

impl CubeSet {
    /// Builds a cube set from scaled corners, checking the
    /// interior-disjointness invariant.
    pub fn new(dim: usize, denom: i64, corners: Vec<Point>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidArgument("dimension must be >= 1".into()));
        }
        if denom < 1 {
            return Err(Error::InvalidArgument("denominator must be >= 1".into()));
        }
        let mut corners = corners;
        for c in &corners {
            if c.dim() != dim {
                return Err(Error::Dimension(dim, c.dim()));
            }
        }
        corners.sort();
        corners.dedup();
        let set = CubeSet { dim, denom, corners };
        set.check_interior_disjoint()?;
        Ok(set)
    }

    pub fn empty(dim: usize) -> Self {
        CubeSet {
            dim,
            denom: 1,
            corners: vec![],
        }
    }

    /// Subset of an already-validated set; sorted corners, invariant
    /// inherited.
    fn subset(dim: usize, denom: i64, corners: Vec<Point>) -> Self {
        debug_assert!(corners.windows(2).all(|w| w[0] < w[1]));
        CubeSet { dim, denom, corners }
    }

    /// Integer-cornered cube set (denominator 1).
    pub fn from_integer_corners(dim: usize, corners: &[Vec<i64>]) -> Result<Self> {
        CubeSet::new(dim, 1, corners.iter().map(|c| Point(c.clone())).collect())
    }

    /// Embeds a lattice set as the union of unit cubes at its points.
    pub fn from_lattice(f: &LatticeSet) -> Result<Self> {
        CubeSet::new(f.dim(), 1, f.points().to_vec())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn denom(&self) -> i64 {
        self.denom
    }

    /// Scaled lower corners in lexicographic order.
    pub fn corners(&self) -> &[Point] {
        &self.corners
    }

    pub fn is_empty(&self) -> bool {
        self.corners.is_empty()
    }

    /// Number of cubes = exact Lebesgue measure.
    pub fn volume(&self) -> u64 {
        self.corners.len() as u64
    }

    /// Center of cube `i`: corner + (1/2, …, 1/2).
    pub fn center(&self, i: usize) -> RationalVector {
        let c = &self.corners[i];
        RationalVector::new(
            c.0.iter().map(|&x| 2 * x + self.denom).collect(),
            2 * self.denom,
        )
        .expect("center denominators are positive")
    }

    fn check_interior_disjoint(&self) -> Result<()> {
        let l = self.denom;
        let mut violation: Option<(usize, usize)> = None;
        near_pairs(&self.corners, l, &mut |i, j| {
            let overlap = self.corners[i]
                .0
                .iter()
                .zip(&self.corners[j].0)
                .all(|(&a, &b)| (a - b).abs() < l);
            if overlap && violation.is_none_or(|v| (i, j) < v) {
                violation = Some((i, j));
            }
        });
        match violation {
            Some((i, j)) => Err(Error::InvalidArgument(format!(
                "cubes at {} and {} (denominator {}) have overlapping interiors",
                self.corners[i], self.corners[j], l
            ))),
            None => Ok(()),
        }
    }

    fn translate(&self, shift: &RationalVector) -> Result<CubeSet> {
        if shift.dim() != self.dim {
            return Err(Error::Dimension(self.dim, shift.dim()));
        }
        let l2 = self.denom.lcm(&shift.denominator());
        let sf = l2 / self.denom;
        let tf = l2 / shift.denominator();
        let corners = self
            .corners
            .iter()
            .map(|c| {
                Point(
                    c.0.iter()
                        .zip(shift.numerators())
                        .map(|(&x, &s)| x * sf + s * tf)
                        .collect(),
                )
            })
            .collect();
        CubeSet::new(self.dim, l2, corners)
    }
}

/// Cubes adjacent for interior connectivity: corner difference at most L
/// in every coordinate with at most one coordinate reaching L (shared
/// face with nonempty relative interior; corner-only contact excluded).
fn cubes_adjacent(a: &Point, b: &Point, l: i64) -> bool {
    let mut at_l = 0;
    for (&x, &y) in a.0.iter().zip(&b.0) {
        let d = (x - y).abs();
        if d > l {
            return false;
        }
        if d == l {
            at_l += 1;
            if at_l > 1 {
                return false;
            }
        }
    }
    true
}

/// Visits a superset of the corner pairs within L of each other in every
/// coordinate. Corners are bucketed by grid cell on the most cell-diverse
/// coordinates (any candidate pair is within one cell there), which keeps
/// the join near-linear on stacked complexes where plain pairwise
/// scanning is quadratic.
fn near_pairs(corners: &[Point], l: i64, visit: &mut impl FnMut(usize, usize)) {
    let n = corners.len();
    if n <= 1 {
        return;
    }
    let d = corners[0].dim();
    let mut scored: Vec<(usize, usize)> = (0..d)
        .map(|k| {
            let mut cells: Vec<i64> = corners.iter().map(|c| c.0[k].div_euclid(l)).collect();
            cells.sort_unstable();
            cells.dedup();
            (cells.len(), k)
        })
        .collect();
    scored.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
    let chosen: Vec<usize> = scored.iter().take(3.min(d)).map(|&(_, k)| k).collect();

    let key = |c: &Point| -> [i64; 3] {
        let mut k = [0i64; 3];
        for (slot, &coord) in k.iter_mut().zip(&chosen) {
            *slot = c.0[coord].div_euclid(l);
        }
        k
    };
    let mut buckets: std::collections::HashMap<[i64; 3], Vec<usize>> = Default::default();
    for (i, c) in corners.iter().enumerate() {
        buckets.entry(key(c)).or_default().push(i);
    }

    // Lexicographically positive offsets visit each bucket pair once.
    let m = chosen.len();
    let mut offsets: Vec<[i64; 3]> = Vec::new();
    let mut off = [0i64; 3];
    off[..m].fill(-1);
    loop {
        if let Some(&first) = off[..m].iter().find(|&&x| x != 0) {
            if first > 0 {
                offsets.push(off);
            }
        }
        let mut i = 0;
        loop {
            if i == m {
                break;
            }
            off[i] += 1;
            if off[i] <= 1 {
                break;
            }
            off[i] = -1;
            i += 1;
        }
        if i == m {
            break;
        }
    }

    for (cell, members) in &buckets {
        for (ai, &i) in members.iter().enumerate() {
            for &j in &members[ai + 1..] {
                visit(i.min(j), i.max(j));
            }
        }
        for off in &offsets {
            let mut neighbor = *cell;
            for (slot, d) in neighbor.iter_mut().zip(off) {
                *slot += d;
            }
            if let Some(others) = buckets.get(&neighbor) {
                for &i in members {
                    for &j in others {
                        visit(i.min(j), i.max(j));
                    }
                }
            }
        }
    }
}

/// Partition of the cubes by the interior-adjacency relation, sorted by
/// lexicographically smallest corner.
pub fn interior_components(omega: &CubeSet) -> Result<Vec<CubeSet>> {
    if omega.is_empty() {
        return Err(Error::EmptyInput);
    }
    let n = omega.corners.len();
    let l = omega.denom;
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    near_pairs(&omega.corners, l, &mut |i, j| {
        if cubes_adjacent(&omega.corners[i], &omega.corners[j], l) {
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    });
    let mut groups: std::collections::BTreeMap<usize, Vec<Point>> = Default::default();
    for i in 0..n {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push(omega.corners[i].clone());
    }
    // Roots are minimal indices, and corners are sorted, so iterating the
    // map yields components ordered by lexicographically smallest corner.
    Ok(groups
        .into_values()
        .map(|corners| CubeSet::subset(omega.dim, l, corners))
        .collect())
}

/// The pair of interior components at minimal center-to-center distance.
#[derive(Debug, Clone)]
pub struct MinDistance {
    /// Indices into the `interior_components` ordering.
    pub pair: (usize, usize),
    /// Achieving cube centers, one in each component.
    pub a: RationalVector,
    pub b: RationalVector,
    /// Exact squared Euclidean distance ‖b - a‖².
    pub dist2: Rat,
    /// √dist2, for reporting.
    pub dist: f64,
}

/// Finds the component pair of minimal center distance, with ties broken
/// lexicographically on (component pair, then achieving centers).
pub fn min_component_distance(omega: &CubeSet) -> Result<MinDistance> {
    let comps = interior_components(omega)?;
    min_distance_over(&comps, omega.denom)
}

/// Minimal center distance across precomputed components.
///
/// Scans cube pairs component-pair by component-pair, restricting one
/// side to a window of the most spread-out coordinate admissible under
/// the best distance found so far. Best candidates compare as
/// (distance², pair, corner a, corner b), which pins the tie-breaking.
fn min_distance_over(comps: &[CubeSet], denom: i64) -> Result<MinDistance> {
    if comps.len() < 2 {
        return Err(Error::SingleComponent);
    }
    let dim = comps[0].dim();
    // Most spread-out coordinate over all corners.
    let spread_coord = (0..dim)
        .max_by_key(|&k| {
            let mut lo = i64::MAX;
            let mut hi = i64::MIN;
            for c in comps.iter().flat_map(|c| c.corners()) {
                lo = lo.min(c.0[k]);
                hi = hi.max(c.0[k]);
            }
            (hi - lo, std::cmp::Reverse(k))
        })
        .unwrap();
    // Per component: corner indices sorted by that coordinate.
    let sorted: Vec<Vec<usize>> = comps
        .iter()
        .map(|c| {
            let mut idx: Vec<usize> = (0..c.corners().len()).collect();
            idx.sort_by_key(|&i| c.corners()[i].0[spread_coord]);
            idx
        })
        .collect();
    let keys: Vec<Vec<i64>> = comps
        .iter()
        .zip(&sorted)
        .map(|(c, idx)| idx.iter().map(|&i| c.corners()[i].0[spread_coord]).collect())
        .collect();

    let mut best: Option<(i128, (usize, usize), Point, Point)> = None;
    for i in 0..comps.len() {
        for j in i + 1..comps.len() {
            for ca in comps[i].corners() {
                let ca_key = ca.0[spread_coord];
                // Admissible window under the current best: |Δ_k| ≤ ⌊√best⌋.
                let (start, radius) = match &best {
                    Some((bq, _, _, _)) => {
                        let r = (*bq as u128).isqrt() as i64;
                        (
                            keys[j].partition_point(|&ky| ky < ca_key.saturating_sub(r)),
                            Some(r),
                        )
                    }
                    None => (0, None),
                };
                for t in start..sorted[j].len() {
                    let dk = keys[j][t] - ca_key;
                    if let Some(r) = radius {
                        if dk > r {
                            break;
                        }
                    }
                    let cb = &comps[j].corners()[sorted[j][t]];
                    let mut q: i128 = 0;
                    let mut over = false;
                    for (&x, &y) in ca.0.iter().zip(&cb.0) {
                        let d = (x - y) as i128;
                        q += d * d;
                        if let Some((bq, _, _, _)) = &best {
                            if q > *bq {
                                over = true;
                                break;
                            }
                        }
                    }
                    if over {
                        continue;
                    }
                    let cand = (q, (i, j), ca.clone(), cb.clone());
                    if best.as_ref().is_none_or(|b| cand < *b) {
                        best = Some(cand);
                    }
                }
            }
        }
    }
    let (q, pair, ca, cb) = best.unwrap();
    let l = denom as i128;
    let dist2 = Rat::new(q, l * l);
    let center = |c: &Point| {
        RationalVector::new(
            c.0.iter().map(|&x| 2 * x + denom).collect(),
            2 * denom,
        )
        .unwrap()
    };
    Ok(MinDistance {
        pair,
        a: center(&ca),
        b: center(&cb),
        dist2,
        dist: dist2.to_f64().unwrap().sqrt(),
    })
}

/// Stacking Ω ↦ ⋃_{j<m} (Ω × \[0,1\] + j·(v,1)): m sheared copies of the
/// cylinder, one dimension up. The slabs are interior-disjoint because
/// consecutive copies differ by 1 in the last coordinate, so the volume
/// multiplies by exactly m.
pub fn stacking(omega: &CubeSet, v: &RationalVector, copies: usize) -> Result<CubeSet> {
    if v.dim() != omega.dim() {
        return Err(Error::Dimension(omega.dim(), v.dim()));
    }
    if copies < 1 {
        return Err(Error::InvalidArgument("need at least one copy".into()));
    }
    let l2 = omega.denom.lcm(&v.denominator());
    let sf = l2 / omega.denom;
    let vf = l2 / v.denominator();
    let mut corners = Vec::with_capacity(omega.corners.len() * copies);
    for j in 0..copies as i64 {
        for c in &omega.corners {
            let mut coords: Vec<i64> = c
                .0
                .iter()
                .zip(v.numerators())
                .map(|(&x, &vn)| x * sf + j * vn * vf)
                .collect();
            coords.push(j * l2);
            corners.push(Point(coords));
        }
    }
    CubeSet::new(omega.dim + 1, l2, corners)
}

/// Result of the continuous folded bridge.
#[derive(Debug, Clone)]
pub struct RealFoldedBridge {
    /// The connected lift Ω × \[0,1\]² + X in dimension d+2.
    pub set: CubeSet,
    /// The interpolation refinement K that satisfied the overlap condition.
    pub k: u32,
    /// Path length n = mK + 1.
    pub path_len: usize,
}

const OVERLAP_SEARCH_CAP: u32 = 10_000;

/// True iff C ∩ (C + delta) has nonempty interior: some cube pair gets
/// strictly within 1 of itself in every coordinate after the shift.
fn component_overlaps_shift(comp: &CubeSet, delta: &RationalVector) -> bool {
    let m = (comp.denom() as i128).lcm(&(delta.denominator() as i128));
    let cf = m / comp.denom() as i128;
    let df = m / delta.denominator() as i128;
    for a in comp.corners() {
        for b in comp.corners() {
            let close = a.0.iter().zip(&b.0).zip(delta.numerators()).all(
                |((&x, &y), &dn)| {
                    ((y as i128 - x as i128) * cf + dn as i128 * df).abs() < m
                },
            );
            if close {
                return true;
            }
        }
    }
    false
}

/// Continuous folded bridge: connects the m+1 interior components of Ω
/// in dimension d+2 via Ω × \[0,1\]² + X, with the path through the
/// component representatives refined K-fold so consecutive translates of
/// every component overlap in interior. Volume multiplies by 2n,
/// n = mK + 1.
pub fn real_folded_bridge(omega: &CubeSet, k_override: Option<u32>) -> Result<RealFoldedBridge> {
    let comps = interior_components(omega)?;
    if comps.len() < 2 {
        return Err(Error::SingleComponent);
    }
    let m = comps.len() - 1;

    // Representatives: center of the lexicographically smallest cube of
    // each component; translate so the first one is the origin.
    let reps: Vec<RationalVector> = comps.iter().map(|c| c.center(0)).collect();
    let a0 = reps[0].clone();
    let neg_a0 = a0.scale(Rat::from_integer(-1))?;
    let translated = omega.translate(&neg_a0)?;
    let reps: Vec<RationalVector> = reps
        .iter()
        .map(|r| r.sub(&a0))
        .collect::<Result<Vec<_>>>()?;
    let comps = interior_components(&translated)?;

    let deltas_for = |k: u32| -> Result<Vec<RationalVector>> {
        (0..m)
            .map(|j| {
                reps[j + 1]
                    .sub(&reps[j])?
                    .scale(Rat::new(1, k as i128))
            })
            .collect()
    };
    let overlap_ok = |deltas: &[RationalVector]| {
        comps
            .iter()
            .all(|c| deltas.iter().all(|d| component_overlaps_shift(c, d)))
    };

    let (k, deltas) = match k_override {
        Some(k) => {
            if k < 1 {
                return Err(Error::InvalidArgument("K must be >= 1".into()));
            }
            let deltas = deltas_for(k)?;
            if !overlap_ok(&deltas) {
                return Err(Error::InvalidArgument(format!(
                    "K = {k} does not satisfy the overlap condition"
                )));
            }
            (k, deltas)
        }
        None => {
            let mut found = None;
            for k in 1..=OVERLAP_SEARCH_CAP {
                let deltas = deltas_for(k)?;
                if overlap_ok(&deltas) {
                    found = Some((k, deltas));
                    break;
                }
            }
            found.ok_or(Error::OverlapSearchExhausted(OVERLAP_SEARCH_CAP))?
        }
    };

    // Path v_j = a_{⌊j/K⌋} + (j mod K)·δ_{⌊j/K⌋}, ending at a_m.
    let n = m * k as usize + 1;
    let mut path = Vec::with_capacity(n);
    for j in 0..n {
        let seg = j / k as usize;
        let step = (j % k as usize) as i128;
        if seg >= m {
            path.push(reps[m].clone());
        } else {
            let d = deltas[seg].scale(Rat::from_integer(step))?;
            path.push(reps[seg].add(&d)?);
        }
    }

    let snake = snake_sequence(n)?;
    let zero = RationalVector::zero(omega.dim());
    let mut offsets: Vec<(RationalVector, Point)> = Vec::with_capacity(2 * n);
    for s in snake.iter().take(n) {
        offsets.push((zero.clone(), s.clone()));
    }
    for (j, s) in snake.iter().skip(n).enumerate() {
        offsets.push((path[j].clone(), s.clone()));
    }

    let mut lr = translated.denom();
    for (w, _) in &offsets {
        lr = lr.lcm(&w.denominator());
    }
    let cf = lr / translated.denom();
    let mut corners = Vec::with_capacity(translated.corners().len() * 2 * n);
    for (w, s) in &offsets {
        let wf = lr / w.denominator();
        for c in translated.corners() {
            let mut coords: Vec<i64> = c
                .0
                .iter()
                .zip(w.numerators())
                .map(|(&x, &wn)| x * cf + wn * wf)
                .collect();
            coords.push(s.0[0] * lr);
            coords.push(s.0[1] * lr);
            corners.push(Point(coords));
        }
    }
    let set = CubeSet::new(omega.dim() + 2, lr, corners)?;
    debug_assert_eq!(set.volume(), omega.volume() * 2 * n as u64);
    Ok(RealFoldedBridge {
        set,
        k,
        path_len: n,
    })
}

/// One logged round of the spiral-bridge iteration.
#[derive(Debug, Clone)]
pub struct SpiralRound {
    pub round: u32,
    /// Ambient dimension after the round.
    pub dim: usize,
    /// Minimal component distance before the round (exact square + float).
    pub dist2: Rat,
    pub dist: f64,
    /// n = ⌈D⌉ and the number of stacked copies ⌊n/2⌋ + 1.
    pub n: i64,
    pub copies: i64,
    /// Minimal component distance after the round; None once connected.
    pub dist2_after: Option<Rat>,
    pub dist_after: Option<f64>,
    pub components_before: usize,
    pub components_after: usize,
}

/// Result of the spiral-bridge iteration.
#[derive(Debug, Clone)]
pub struct SpiralBridge {
    pub set: CubeSet,
    pub log: Vec<SpiralRound>,
}

/// Iterated stacking toward the closest component pair until the set is
/// connected. Each round with D ≥ 2 contracts the minimal distance by a
/// factor ≤ 0.94281; once D < 2 a round merges the minimal pair.
pub fn spiral_bridge(omega: &CubeSet, max_rounds: u32) -> Result<SpiralBridge> {
    let mut current = omega.clone();
    let mut comps = interior_components(&current)?;
    let mut log: Vec<SpiralRound> = Vec::new();
    let mut round = 0u32;
    loop {
        if comps.len() == 1 {
            return Ok(SpiralBridge { set: current, log });
        }
        if round >= max_rounds {
            return Err(Error::RoundLimit {
                limit: max_rounds,
                log,
            });
        }
        round += 1;

        let md = min_distance_over(&comps, current.denom())?;
        // The previous round stayed disconnected; its post-distance is
        // this round's pre-distance.
        if let Some(prev) = log.last_mut() {
            prev.dist2_after = Some(md.dist2);
            prev.dist_after = Some(md.dist);
        }
        let n = ceil_sqrt(md.dist2);
        let v = md.b.sub(&md.a)?.scale(Rat::new(1, n as i128))?;
        let copies = (n / 2 + 1) as usize;
        let next = stacking(&current, &v, copies)?;

        let comps_after = interior_components(&next)?;
        log.push(SpiralRound {
            round,
            dim: next.dim(),
            dist2: md.dist2,
            dist: md.dist,
            n,
            copies: copies as i64,
            dist2_after: None,
            dist_after: None,
            components_before: comps.len(),
            components_after: comps_after.len(),
        });
        current = next;
        comps = comps_after;
    }
}

/// Refines each cube into its L^d grid cells, mapping the complex onto
/// the integer lattice at scale L. Moore components of the output refine
/// the interior components of the input.
pub fn to_lattice(omega: &CubeSet) -> LatticeSet {
    let l = omega.denom;
    let d = omega.dim;
    let mut cells = Vec::new();
    for c in &omega.corners {
        let mut offset = vec![0i64; d];
        loop {
            cells.push(Point(
                c.0.iter().zip(&offset).map(|(&x, &o)| x + o).collect(),
            ));
            let mut i = 0;
            loop {
                if i == d {
                    break;
                }
                offset[i] += 1;
                if offset[i] < l {
                    break;
                }
                offset[i] = 0;
                i += 1;
            }
            if i == d {
                break;
            }
        }
    }
    LatticeSet::new(d, cells).expect("cells share the cube dimension")
}

/// The exact contraction threshold: true iff after² ≤ (0.94281)²·before².
pub fn contraction_holds(before2: Rat, after2: Rat) -> bool {
    let factor_num: i128 = 94_281 * 94_281;
    let factor_den: i128 = 100_000 * 100_000;
    after2 * Rat::from_integer(factor_den) <= before2 * Rat::from_integer(factor_num)
}
