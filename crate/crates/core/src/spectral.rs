//! Exact spectrality over finite abelian groups.
//!
//! The Fourier transform of the indicator of F ⊂ G at a character ξ is a
//! sum of N-th roots of unity (N = lcm of the moduli), evaluated exactly
//! as a [`CyclotomicSum`]. A spectrum is Λ ⊂ Ĝ with |Λ| = |F| whose
//! nonzero pairwise differences all land in the Fourier zero set; the
//! search is a clique-style backtracking over that zero set.

use std::collections::BTreeMap;

use num_integer::Integer;
use num_rational::Ratio;

use crate::cyclotomic::CyclotomicSum;
use crate::error::{Error, Result};
use crate::lattice::{cartesian_product, LatticeSet, Point};
use crate::rational::{rat_fract, Rat, RationalVector};
use crate::torus::{FiniteAbelianGroup, Search};

/// Verified spectrum certificate: |frequencies| = |set| and all nonzero
/// pairwise differences of the frequencies lie in the Fourier zero set.
#[derive(Debug, Clone)]
pub struct SpectrumWitness {
    pub set: LatticeSet,
    pub frequencies: LatticeSet,
    pub group: FiniteAbelianGroup,
    pub verified: bool,
}

/// Exponent of ζ_N for the character pairing ⟨x, ξ⟩, N = lcm(moduli).
fn pairing_exponent(g: &FiniteAbelianGroup, n: i64, x: &Point, xi: &Point) -> i64 {
    let mut e: i64 = 0;
    for ((&xc, &xic), &m) in x.0.iter().zip(&xi.0).zip(g.moduli()) {
        e = (e + xc * xic % n * (n / m)) % n;
    }
    e.rem_euclid(n)
}

fn character_order(g: &FiniteAbelianGroup) -> i64 {
    g.moduli().iter().fold(1i64, |acc, &m| acc.lcm(&m))
}

/// F̂(ξ) = Σ_{x∈F} ζ_N^{⟨x,ξ⟩} as an exact cyclotomic sum.
pub fn fourier_value(
    f: &LatticeSet,
    g: &FiniteAbelianGroup,
    xi: &Point,
) -> Result<CyclotomicSum> {
    let tile = g.reduce_set(f)?;
    let xi = g.reduce_point(xi)?;
    let n = character_order(g);
    let mut sum = CyclotomicSum::zero(n as usize)?;
    for x in tile.points() {
        sum.add_root(pairing_exponent(g, n, x, &xi));
    }
    Ok(sum)
}

/// The exact Fourier zero set {ξ ∈ Ĝ \ {0} : F̂(ξ) = 0}.
pub fn zero_set(f: &LatticeSet, g: &FiniteAbelianGroup) -> Result<LatticeSet> {
    let tile = g.reduce_set(f)?;
    let n = character_order(g);
    let mut zeros = Vec::new();
    for xi in g.elements() {
        if xi.0.iter().all(|&c| c == 0) {
            continue;
        }
        let mut sum = CyclotomicSum::zero(n as usize)?;
        for x in tile.points() {
            sum.add_root(pairing_exponent(g, n, x, &xi));
        }
        if sum.is_zero() {
            zeros.push(xi);
        }
    }
    LatticeSet::new(g.dim(), zeros)
}

/// True iff every nonzero pairwise difference of `lambda` lies in the
/// Fourier zero set of (f, g).
pub fn verify_orthogonal_set(
    f: &LatticeSet,
    g: &FiniteAbelianGroup,
    lambda: &LatticeSet,
) -> Result<bool> {
    let freqs = g.reduce_set(lambda)?;
    let zeros = zero_set(f, g)?;
    let mut in_zero = vec![false; g.order() as usize];
    for z in zeros.points() {
        in_zero[g.index_of(z)] = true;
    }
    for (i, a) in freqs.points().iter().enumerate() {
        for b in &freqs.points()[i + 1..] {
            if !in_zero[g.index_of(&g.sub(a, b))] || !in_zero[g.index_of(&g.sub(b, a))] {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Searches for a spectrum Λ ∋ 0 with |Λ| = |f|, exhaustively up to
/// `budget` nodes. Candidates and extension order are lexicographic, so
/// the outcome is deterministic.
pub fn find_spectrum(
    f: &LatticeSet,
    g: &FiniteAbelianGroup,
    budget: u64,
) -> Result<Search<SpectrumWitness>> {
    let tile = g.reduce_set(f)?;
    if tile.is_empty() {
        return Err(Error::EmptyInput);
    }
    let target = tile.len();
    let zeros = zero_set(&tile, g)?;
    let mut in_zero = vec![false; g.order() as usize];
    for z in zeros.points() {
        in_zero[g.index_of(z)] = true;
    }
    // Every non-anchor element of Λ differs from 0 by itself, so
    // candidates live inside the zero set.
    let candidates: Vec<Point> = zeros.points().to_vec();

    struct Clique<'a> {
        g: &'a FiniteAbelianGroup,
        in_zero: Vec<bool>,
        candidates: Vec<Point>,
        target: usize,
        budget: u64,
        nodes: u64,
    }

    impl Clique<'_> {
        fn extend(&mut self, chosen: &mut Vec<Point>, start: usize) -> Search<Vec<Point>> {
            if chosen.len() + 1 == self.target {
                return Search::Found(chosen.clone());
            }
            let needed = self.target - 1 - chosen.len();
            if self.candidates.len() - start < needed {
                return Search::NotFound;
            }
            for i in start..self.candidates.len() {
                if self.candidates.len() - i < needed {
                    break;
                }
                let cand = self.candidates[i].clone();
                let ok = chosen.iter().all(|c| {
                    self.in_zero[self.g.index_of(&self.g.sub(&cand, c))]
                });
                if !ok {
                    continue;
                }
                self.nodes += 1;
                if self.nodes > self.budget {
                    return Search::BudgetExhausted;
                }
                chosen.push(cand);
                match self.extend(chosen, i + 1) {
                    Search::Found(sol) => return Search::Found(sol),
                    Search::BudgetExhausted => return Search::BudgetExhausted,
                    Search::NotFound => {}
                }
                chosen.pop();
            }
            Search::NotFound
        }
    }

    if target == 1 {
        let freqs = LatticeSet::new(g.dim(), [Point::zero(g.dim())])?;
        return Ok(Search::Found(SpectrumWitness {
            set: tile,
            frequencies: freqs,
            group: g.clone(),
            verified: true,
        }));
    }

    let mut clique = Clique {
        g,
        in_zero,
        candidates,
        target,
        budget,
        nodes: 0,
    };
    let mut chosen = Vec::new();
    match clique.extend(&mut chosen, 0) {
        Search::Found(points) => {
            let mut all = points;
            all.push(Point::zero(g.dim()));
            let freqs = LatticeSet::new(g.dim(), all)?;
            let verified =
                freqs.len() == target && verify_orthogonal_set(&tile, g, &freqs)?;
            debug_assert!(verified);
            Ok(Search::Found(SpectrumWitness {
                set: tile,
                frequencies: freqs,
                group: g.clone(),
                verified,
            }))
        }
        Search::NotFound => Ok(Search::NotFound),
        Search::BudgetExhausted => Ok(Search::BudgetExhausted),
    }
}

/// Product spectrum Λ × Σ for a product set in a product group.
pub fn product_spectrum(lambda1: &LatticeSet, lambda2: &LatticeSet) -> LatticeSet {
    cartesian_product(lambda1, lambda2)
}

/// Keeps, within every coset of G = {ξ : u·ξ ∈ (1/n)Z} met by the input,
/// the points on the most populated coset of H = {ξ : u·ξ ∈ Z}
/// (ties to the smallest fractional key).
///
/// The output Λ keeps at least a 1/n fraction of the input, and no
/// pairwise difference δ of Λ has u·δ ∈ (1/n)Z \ Z: differences inside a
/// G-class stay in H, differences across G-classes leave G entirely.
pub fn coset_filter(
    lambda: &[RationalVector],
    u: &RationalVector,
    n: u32,
) -> Result<Vec<RationalVector>> {
    if n < 1 {
        return Err(Error::InvalidArgument("n must be >= 1".into()));
    }
    if u.is_zero() {
        return Err(Error::InvalidArgument(
            "direction vector must be nonzero".into(),
        ));
    }
    let n_rat = Rat::from_integer(n as i128);

    // key_G = (u·ξ) mod 1/n, key_H = (u·ξ) mod 1.
    let mut classes: BTreeMap<Rat, BTreeMap<Rat, Vec<usize>>> = BTreeMap::new();
    for (i, xi) in lambda.iter().enumerate() {
        let t = u.dot(xi)?;
        let key_g = rat_fract(t * n_rat) / n_rat;
        let key_h = rat_fract(t);
        classes.entry(key_g).or_default().entry(key_h).or_default().push(i);
    }

    let mut keep = Vec::new();
    for subclasses in classes.values() {
        // BTreeMap iterates keys ascending; strict > keeps the smallest
        // key among ties.
        let mut best: Option<(&Rat, &Vec<usize>)> = None;
        for (key, members) in subclasses {
            if best.is_none_or(|(_, b)| members.len() > b.len()) {
                best = Some((key, members));
            }
        }
        keep.extend(best.unwrap().1.iter().copied());
    }
    keep.sort_unstable();
    Ok(keep.into_iter().map(|i| lambda[i].clone()).collect())
}

/// True iff u·δ ∈ (1/n)Z \ Z, the "new zero" cosets introduced by an
/// n-fold stacking in direction u. Test-support predicate.
pub fn difference_hits_new_zeros(delta_dot_u: Rat, n: u32) -> bool {
    let n_rat = Ratio::from_integer(n as i128);
    (delta_dot_u * n_rat).is_integer() && !delta_dot_u.is_integer()
}
