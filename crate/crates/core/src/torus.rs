//! Translational tilings of finite abelian groups Z_{N1} × … × Z_{Nd}.
//!
//! Tiling a torus by a tile F is an exact cover problem: pick translates
//! A so that {F + a : a ∈ A} partitions the group. The search backtracks
//! on the least-covered cell with bitset row masks, which keeps it
//! deterministic and lets NotFound double as an exhaustiveness proof.

use std::fmt;

use crate::error::{Error, Result};
use crate::lattice::{LatticeSet, Point};

/// Z_{N1} × … × Z_{Nd}, the torus model of Z^d.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteAbelianGroup {
    moduli: Vec<i64>,
}

impl FiniteAbelianGroup {
    pub fn new(moduli: Vec<i64>) -> Result<Self> {
        if moduli.is_empty() || moduli.iter().any(|&n| n < 1) {
            return Err(Error::InvalidArgument(
                "group moduli must be positive".into(),
            ));
        }
        Ok(FiniteAbelianGroup { moduli })
    }

    pub fn cyclic(n: i64) -> Result<Self> {
        FiniteAbelianGroup::new(vec![n])
    }

    /// G1 × G2.
    pub fn product(&self, other: &FiniteAbelianGroup) -> FiniteAbelianGroup {
        let mut moduli = self.moduli.clone();
        moduli.extend_from_slice(&other.moduli);
        FiniteAbelianGroup { moduli }
    }

    pub fn moduli(&self) -> &[i64] {
        &self.moduli
    }

    pub fn dim(&self) -> usize {
        self.moduli.len()
    }

    pub fn order(&self) -> u64 {
        self.moduli.iter().map(|&n| n as u64).product()
    }

    /// Canonical representative with coordinates in [0, N_i).
    pub fn reduce_point(&self, p: &Point) -> Result<Point> {
        if p.dim() != self.dim() {
            return Err(Error::Dimension(self.dim(), p.dim()));
        }
        Ok(Point(
            p.0.iter()
                .zip(&self.moduli)
                .map(|(&c, &n)| c.rem_euclid(n))
                .collect(),
        ))
    }

    /// Reduces a set mod G, requiring the reduction to be injective.
    pub fn reduce_set(&self, f: &LatticeSet) -> Result<LatticeSet> {
        let reduced = LatticeSet::new(
            self.dim(),
            f.points()
                .iter()
                .map(|p| self.reduce_point(p))
                .collect::<Result<Vec<_>>>()?,
        )?;
        if reduced.len() != f.len() {
            return Err(Error::Projection);
        }
        Ok(reduced)
    }

    pub fn add(&self, a: &Point, b: &Point) -> Point {
        Point(
            a.0.iter()
                .zip(&b.0)
                .zip(&self.moduli)
                .map(|((&x, &y), &n)| (x + y).rem_euclid(n))
                .collect(),
        )
    }

    pub fn neg(&self, a: &Point) -> Point {
        Point(
            a.0.iter()
                .zip(&self.moduli)
                .map(|(&x, &n)| (-x).rem_euclid(n))
                .collect(),
        )
    }

    pub fn sub(&self, a: &Point, b: &Point) -> Point {
        self.add(a, &self.neg(b))
    }

    /// Mixed-radix index of a reduced point; inverse of [`Self::point_at`].
    pub fn index_of(&self, p: &Point) -> usize {
        let mut idx: usize = 0;
        for (c, &n) in p.0.iter().zip(&self.moduli) {
            idx = idx * n as usize + *c as usize;
        }
        idx
    }

    pub fn point_at(&self, mut idx: usize) -> Point {
        let mut coords = vec![0i64; self.dim()];
        for i in (0..self.dim()).rev() {
            let n = self.moduli[i] as usize;
            coords[i] = (idx % n) as i64;
            idx /= n;
        }
        Point(coords)
    }

    /// All elements in lexicographic (= index) order.
    pub fn elements(&self) -> impl Iterator<Item = Point> + '_ {
        (0..self.order() as usize).map(|i| self.point_at(i))
    }
}

impl fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.moduli.iter().map(|n| format!("Z_{n}")).collect();
        write!(f, "{}", parts.join("x"))
    }
}

/// Verified tiling certificate: tile ⊕ translates = group.
#[derive(Debug, Clone)]
pub struct TilingWitness {
    pub tile: LatticeSet,
    pub translates: LatticeSet,
    pub group: FiniteAbelianGroup,
    pub verified: bool,
}

/// Outcome of a budgeted exhaustive search.
#[derive(Debug, Clone, PartialEq)]
pub enum Search<T> {
    Found(T),
    /// The search space was exhausted; no certificate exists.
    NotFound,
    /// The node budget ran out before the space was exhausted.
    BudgetExhausted,
}

impl<T> Search<T> {
    pub fn found(self) -> Option<T> {
        match self {
            Search::Found(t) => Some(t),
            _ => None,
        }
    }
}

fn check_preconditions(f: &LatticeSet, g: &FiniteAbelianGroup) -> Result<LatticeSet> {
    let tile = g.reduce_set(f)?;
    let order = g.order();
    if tile.is_empty() || !order.is_multiple_of(tile.len() as u64) {
        return Err(Error::Divisibility(tile.len() as u64, order));
    }
    Ok(tile)
}

/// True iff {x + y : x ∈ f, y ∈ a} covers every group element exactly once.
pub fn verify_tiling(f: &LatticeSet, a: &LatticeSet, g: &FiniteAbelianGroup) -> Result<bool> {
    let tile = check_preconditions(f, g)?;
    let trans = g.reduce_set(a)?;
    let order = g.order() as usize;
    if tile.len() * trans.len() != order {
        return Ok(false);
    }
    let mut counts = vec![0u32; order];
    for x in tile.points() {
        for y in trans.points() {
            let idx = g.index_of(&g.add(x, y));
            counts[idx] += 1;
            if counts[idx] > 1 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Compact bitset over group indices.
#[derive(Clone, PartialEq, Eq)]
struct Mask {
    words: Vec<u64>,
}

impl Mask {
    fn new(bits: usize) -> Self {
        Mask {
            words: vec![0; bits.div_ceil(64)],
        }
    }

    fn set(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    fn get(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    fn disjoint(&self, other: &Mask) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    fn or_assign(&mut self, other: &Mask) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    fn and_not_assign(&mut self, other: &Mask) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }
}

struct CoverSearch<'a> {
    g: &'a FiniteAbelianGroup,
    /// row_masks[a] = cells covered by the translate indexed a.
    row_masks: Vec<Mask>,
    /// rows_by_cell[e] = translate indices whose mask covers cell e.
    rows_by_cell: Vec<Vec<usize>>,
    budget: u64,
    nodes: u64,
}

impl CoverSearch<'_> {
    /// Backtracking on the uncovered cell with the fewest viable rows.
    /// Returns Found(chosen rows), NotFound, or BudgetExhausted.
    fn run(&mut self, covered: &mut Mask, chosen: &mut Vec<usize>) -> Search<Vec<usize>> {
        let order = self.g.order() as usize;
        let cell = (0..order).find(|&e| !covered.get(e));
        let Some(first_uncovered) = cell else {
            return Search::Found(chosen.clone());
        };

        // Least-covered-cell-first branching, ties to the smallest cell.
        let mut best_rows: Option<Vec<usize>> = None;
        for e in first_uncovered..order {
            if covered.get(e) {
                continue;
            }
            let viable: Vec<usize> = self.rows_by_cell[e]
                .iter()
                .copied()
                .filter(|&r| covered.disjoint(&self.row_masks[r]))
                .collect();
            let n = viable.len();
            if best_rows.as_ref().is_none_or(|b| n < b.len()) {
                best_rows = Some(viable);
                if n == 0 {
                    break;
                }
            }
        }
        let rows = best_rows.unwrap();
        if rows.is_empty() {
            return Search::NotFound;
        }

        for r in rows {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Search::BudgetExhausted;
            }
            covered.or_assign(&self.row_masks[r]);
            chosen.push(r);
            match self.run(covered, chosen) {
                Search::Found(sol) => return Search::Found(sol),
                Search::BudgetExhausted => return Search::BudgetExhausted,
                Search::NotFound => {}
            }
            chosen.pop();
            covered.and_not_assign(&self.row_masks[r]);
        }
        Search::NotFound
    }
}

/// Searches for a translate set A with f ⊕ A = G, exhaustively up to
/// `budget` search nodes.
pub fn find_tiling(
    f: &LatticeSet,
    g: &FiniteAbelianGroup,
    budget: u64,
) -> Result<Search<TilingWitness>> {
    let tile = check_preconditions(f, g)?;
    let order = g.order() as usize;

    let mut row_masks = Vec::with_capacity(order);
    for a_idx in 0..order {
        let a = g.point_at(a_idx);
        let mut mask = Mask::new(order);
        for x in tile.points() {
            mask.set(g.index_of(&g.add(x, &a)));
        }
        row_masks.push(mask);
    }
    let mut rows_by_cell = vec![Vec::new(); order];
    for (r, mask) in row_masks.iter().enumerate() {
        for (e, cell_rows) in rows_by_cell.iter_mut().enumerate() {
            if mask.get(e) {
                cell_rows.push(r);
            }
        }
    }

    let mut search = CoverSearch {
        g,
        row_masks,
        rows_by_cell,
        budget,
        nodes: 0,
    };
    let mut covered = Mask::new(order);
    let mut chosen = Vec::new();
    match search.run(&mut covered, &mut chosen) {
        Search::Found(rows) => {
            let translates =
                LatticeSet::new(g.dim(), rows.iter().map(|&r| g.point_at(r)))?;
            debug_assert!(verify_tiling(&tile, &translates, g)?);
            Ok(Search::Found(TilingWitness {
                tile,
                translates,
                group: g.clone(),
                verified: true,
            }))
        }
        Search::NotFound => Ok(Search::NotFound),
        Search::BudgetExhausted => Ok(Search::BudgetExhausted),
    }
}

/// A subgroup given by generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgroup {
    pub generators: Vec<Point>,
    pub order: u64,
}

/// The stabilizer {t ∈ G : a + t = a}, i.e. the periods of the translate
/// set, as a minimal generator list plus the subgroup order.
pub fn tiling_periods(a: &LatticeSet, g: &FiniteAbelianGroup) -> Result<Subgroup> {
    let trans = g.reduce_set(a)?;
    let mut stabilizer = Vec::new();
    for t in g.elements() {
        let shifted = LatticeSet::new(
            g.dim(),
            trans.points().iter().map(|p| g.add(p, &t)),
        )?;
        if shifted == trans {
            stabilizer.push(t);
        }
    }

    // Greedy minimal generator list: add elements (lex order) that enlarge
    // the generated subgroup.
    let mut generators: Vec<Point> = Vec::new();
    let mut span = vec![Point::zero(g.dim())];
    for t in &stabilizer {
        if span.contains(t) {
            continue;
        }
        generators.push(t.clone());
        span = span_of(&generators, g);
        if span.len() == stabilizer.len() {
            break;
        }
    }
    Ok(Subgroup {
        generators,
        order: stabilizer.len() as u64,
    })
}

fn span_of(generators: &[Point], g: &FiniteAbelianGroup) -> Vec<Point> {
    let mut span = vec![Point::zero(g.dim())];
    let mut frontier = span.clone();
    while let Some(p) = frontier.pop() {
        for gen in generators {
            let q = g.add(&p, gen);
            if !span.contains(&q) {
                span.push(q.clone());
                frontier.push(q);
            }
        }
    }
    span.sort();
    span
}
