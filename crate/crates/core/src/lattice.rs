//! Finite subsets of Z^d: set algebra and connectivity.
//!
//! A [`LatticeSet`] stores deduplicated points in lexicographic order, so
//! equality, hashing and serialization are deterministic.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::error::{Error, Result};

/// A point of Z^d.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point(pub Vec<i64>);

impl Point {
    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn zero(dim: usize) -> Self {
        Point(vec![0; dim])
    }

    /// Concatenation (x, y) of two points, one dimension block each.
    pub fn concat(&self, other: &Point) -> Point {
        let mut coords = self.0.clone();
        coords.extend_from_slice(&other.0);
        Point(coords)
    }

    pub fn add(&self, other: &Point) -> Point {
        Point(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn sub(&self, other: &Point) -> Point {
        Point(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }

    /// Chebyshev (L∞) distance.
    pub fn chebyshev(&self, other: &Point) -> i64 {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a - b).abs())
            .max()
            .unwrap_or(0)
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Adjacency notion used for connected components.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Connectivity {
    /// Every coordinate differs by at most 1 (3^d - 1 neighbors).
    Moore,
    /// Differ by ±1 in exactly one coordinate (2d neighbors).
    Axis,
}

/// A finite subset of Z^d with explicit ambient dimension.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LatticeSet {
    dim: usize,
    points: Vec<Point>,
}

impl LatticeSet {
    /// Builds a set, deduplicating and sorting. Every point must have
    /// exactly `dim` coordinates.
    pub fn new(dim: usize, points: impl IntoIterator<Item = Point>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for p in points {
            if p.dim() != dim {
                return Err(Error::Dimension(dim, p.dim()));
            }
            set.insert(p);
        }
        Ok(LatticeSet {
            dim,
            points: set.into_iter().collect(),
        })
    }

    pub fn empty(dim: usize) -> Self {
        LatticeSet { dim, points: vec![] }
    }

    /// One-dimensional set from integer values.
    pub fn from_i64s(values: &[i64]) -> Self {
        LatticeSet::new(1, values.iter().map(|&v| Point(vec![v]))).unwrap()
    }

    /// Set from rows of coordinates, all of the same arity.
    pub fn from_rows(dim: usize, rows: &[Vec<i64>]) -> Result<Self> {
        LatticeSet::new(dim, rows.iter().map(|r| Point(r.clone())))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Points in lexicographic order.
    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.points.binary_search(p).is_ok()
    }

    pub fn translate(&self, v: &Point) -> LatticeSet {
        LatticeSet {
            dim: self.dim,
            points: self.points.iter().map(|p| p.add(v)).collect(),
        }
    }
}

impl fmt::Debug for LatticeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, p) in self.points.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "}} in Z^{}", self.dim)
    }
}

/// Minkowski sum a + b together with the direct-sum flag
/// (|a + b| = |a|·|b|, i.e. every element has a unique representation).
pub fn minkowski_sum(a: &LatticeSet, b: &LatticeSet) -> Result<(LatticeSet, bool)> {
    if a.dim() != b.dim() {
        return Err(Error::Dimension(a.dim(), b.dim()));
    }
    let mut set = BTreeSet::new();
    for x in a.points() {
        for y in b.points() {
            set.insert(x.add(y));
        }
    }
    let is_direct = set.len() == a.len() * b.len();
    Ok((
        LatticeSet {
            dim: a.dim(),
            points: set.into_iter().collect(),
        },
        is_direct,
    ))
}

/// Cartesian product a × b ⊂ Z^{dim a + dim b}.
pub fn cartesian_product(a: &LatticeSet, b: &LatticeSet) -> LatticeSet {
    let mut points = Vec::with_capacity(a.len() * b.len());
    for x in a.points() {
        for y in b.points() {
            points.push(x.concat(y));
        }
    }
    points.sort();
    LatticeSet {
        dim: a.dim() + b.dim(),
        points,
    }
}

struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    fn new(len: usize) -> Self {
        UnionFind {
            parent: (0..len).collect(),
            size: vec![1; len],
        }
    }

    fn find(&mut self, mut i: usize) -> usize {
        while self.parent[i] != i {
            self.parent[i] = self.parent[self.parent[i]];
            i = self.parent[i];
        }
        i
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a == b {
            return;
        }
        if self.size[a] < self.size[b] {
            self.parent[a] = b;
            self.size[b] += self.size[a];
        } else {
            self.parent[b] = a;
            self.size[a] += self.size[b];
        }
    }
}

/// Maximal connected components of `f`, sorted by lexicographically
/// smallest member.
pub fn connected_components(f: &LatticeSet, mode: Connectivity) -> Result<Vec<LatticeSet>> {
    if f.is_empty() {
        return Err(Error::EmptyInput);
    }
    let dim = f.dim();
    let points = f.points();
    let index: HashMap<&Point, usize> = points.iter().zip(0..).collect();
    let mut uf = UnionFind::new(points.len());

    // Neighbor enumeration is 3^d - 1 per point in moore mode; fall back to
    // pairwise scanning when the neighborhood outgrows the set.
    let enumerate = match mode {
        Connectivity::Axis => true,
        Connectivity::Moore => dim <= 4,
    };
    if enumerate {
        let mut offsets: Vec<Point> = Vec::new();
        match mode {
            Connectivity::Axis => {
                for i in 0..dim {
                    for s in [-1i64, 1] {
                        let mut c = vec![0; dim];
                        c[i] = s;
                        offsets.push(Point(c));
                    }
                }
            }
            Connectivity::Moore => {
                let mut c = vec![-1i64; dim];
                loop {
                    if c.iter().any(|&x| x != 0) {
                        offsets.push(Point(c.clone()));
                    }
                    let mut i = 0;
                    loop {
                        if i == dim {
                            break;
                        }
                        c[i] += 1;
                        if c[i] <= 1 {
                            break;
                        }
                        c[i] = -1;
                        i += 1;
                    }
                    if i == dim {
                        break;
                    }
                }
            }
        }
        for (i, p) in points.iter().enumerate() {
            for off in &offsets {
                if let Some(&j) = index.get(&p.add(off)) {
                    uf.union(i, j);
                }
            }
        }
    } else {
        for i in 0..points.len() {
            for j in i + 1..points.len() {
                if points[i].chebyshev(&points[j]) <= 1 {
                    uf.union(i, j);
                }
            }
        }
    }

    let mut by_root: HashMap<usize, Vec<Point>> = HashMap::new();
    for (i, p) in points.iter().enumerate() {
        by_root.entry(uf.find(i)).or_default().push(p.clone());
    }
    let mut comps: Vec<Vec<Point>> = by_root.into_values().collect();
    // Members arrive sorted (points are); order components by first member.
    comps.sort_by(|a, b| a[0].cmp(&b[0]));
    Ok(comps
        .into_iter()
        .map(|points| LatticeSet { dim, points })
        .collect())
}
