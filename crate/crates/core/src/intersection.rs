//! Kelley's intersection number of a finite collection.
//!
//! For a finite sequence `s = <c_1, .., c_n>` the score `kappa_s` is `k / n`,
//! where `k` is the largest number of terms with a common atom. The
//! intersection number of a collection is the infimum of `kappa_s` over all
//! finite sequences drawn from it, repetitions allowed.
//!
//! A sequence with repetitions is the same thing as a probability vector
//! with rational entries on the members, and `kappa_s` is the payoff of the
//! best reply by an adversary who picks an atom. The infimum is therefore the
//! value of the zero-sum game with payoff `[x in c]`, which is a linear
//! program:
//!
//! ```text
//! minimize t  subject to  w >= 0,  sum_c w_c = 1,
//!                         sum_c w_c [x in c] <= t   for every atom x.
//! ```
//!
//! Its dual maximizes `min_c mu(c)` over probability vectors `mu` on the
//! atoms, which is the measure of [`crate::kelley::measure_from_collection`].

use num::{BigInt, One, Signed, Zero};

use crate::algebra::{AtomSpace, Collection, Element};
use crate::error::{Error, Result};
use crate::lp::{exact_lp_solve, Constraint, LinearProgram, Relation, Sense};
use crate::rational::Rational;

/// Default limit on the number of multisets visited by
/// [`intersection_number_bruteforce`].
pub const DEFAULT_BRUTE_BUDGET: u128 = 20_000_000;

/// Score of one explicit sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceScore {
    pub length: usize,
    /// Largest number of terms sharing an atom.
    pub depth: usize,
    pub kappa: Rational,
    /// Lowest atom attaining the depth.
    pub witness_atom: usize,
    /// Positions of the terms containing `witness_atom`.
    pub indices: Vec<usize>,
}

pub fn kappa_of_sequence(seq: &[Element]) -> Result<SequenceScore> {
    let first = seq.first().ok_or(Error::Empty("sequence"))?;
    let space = first.space();
    let mut counts = vec![0usize; space.atom_count()];
    for (index, c) in seq.iter().enumerate() {
        if c.space() != space {
            return Err(Error::mismatch(space, c.space()));
        }
        if c.is_zero() {
            return Err(Error::ZeroMember { index });
        }
        for x in c.atoms() {
            counts[x] += 1;
        }
    }
    let (witness_atom, depth) = deepest(&counts);
    let indices = seq
        .iter()
        .enumerate()
        .filter(|(_, c)| c.contains(witness_atom))
        .map(|(i, _)| i)
        .collect();
    Ok(SequenceScore {
        length: seq.len(),
        depth,
        kappa: Rational::new(BigInt::from(depth), BigInt::from(seq.len())),
        witness_atom,
        indices,
    })
}

/// Lowest atom of maximal count.
fn deepest(counts: &[usize]) -> (usize, usize) {
    let mut best = (0, counts[0]);
    for (x, &c) in counts.iter().enumerate() {
        if c > best.1 {
            best = (x, c);
        }
    }
    best
}

/// Optimal strategies of the intersection game.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GameSolution {
    /// The intersection number.
    pub value: Rational,
    /// Optimal mixed strategy of the atom player: `min_c mu(c) = value`.
    pub atom_weights: Vec<Rational>,
    /// Optimal mixed strategy over the members, indexed like the collection:
    /// `max_x sum_c w_c [x in c] = value`.
    pub member_weights: Vec<Rational>,
}

/// Computes the intersection number of `collection` exactly.
///
/// Only inclusion-minimal members enter the program; a superset never lowers
/// `mu(c)` so it cannot change the value, and it receives weight zero.
pub fn intersection_number(collection: &Collection) -> Result<GameSolution> {
    if collection.is_empty() {
        return Err(Error::Empty("collection"));
    }
    let space = collection.space();
    let members = collection.members();
    let active = collection.minimal_indices();
    let r = active.len();
    let n = space.atom_count();
    let zero = Rational::zero();
    let one = Rational::one();

    let mut objective = vec![zero.clone(); r + 1];
    objective[r] = one.clone();
    let mut constraints = Vec::with_capacity(n + 1);
    let mut sum_row = vec![one.clone(); r + 1];
    sum_row[r] = zero.clone();
    constraints.push(Constraint::new(sum_row, Relation::Eq, one.clone()));
    for x in 0..n {
        let mut row: Vec<Rational> = active
            .iter()
            .map(|&i| {
                if members[i].contains(x) {
                    one.clone()
                } else {
                    zero.clone()
                }
            })
            .collect();
        row.push(-one.clone());
        constraints.push(Constraint::new(row, Relation::Le, zero.clone()));
    }
    let sol = exact_lp_solve(&LinearProgram {
        sense: Sense::Minimize,
        objective,
        constraints,
    })?;

    let value = sol.objective.clone();
    let atom_weights: Vec<Rational> = sol.duals[1..].iter().map(|y| -y).collect();
    let mut member_weights = vec![zero; members.len()];
    for (pos, &i) in active.iter().enumerate() {
        member_weights[i] = sol.values[pos].clone();
    }
    let solution = GameSolution {
        value,
        atom_weights,
        member_weights,
    };
    check_game_solution(space, members, &solution)?;
    Ok(solution)
}

/// Verifies both optimality certificates of a solution exactly.
fn check_game_solution(space: AtomSpace, members: &[Element], s: &GameSolution) -> Result<()> {
    let probability = |v: &[Rational]| {
        v.iter().all(|p| !p.is_negative()) && v.iter().sum::<Rational>() == Rational::one()
    };
    if !probability(&s.atom_weights) || !probability(&s.member_weights) {
        return Err(Error::Contract(
            "game strategies are not probability vectors".into(),
        ));
    }
    let dual_value = members
        .iter()
        .map(|c| c.atoms().map(|x| &s.atom_weights[x]).sum::<Rational>())
        .min()
        .expect("nonempty");
    let primal_value = (0..space.atom_count())
        .map(|x| {
            members
                .iter()
                .zip(&s.member_weights)
                .filter(|(c, _)| c.contains(x))
                .map(|(_, w)| w)
                .sum::<Rational>()
        })
        .max()
        .expect("nonempty");
    if dual_value != s.value || primal_value != s.value {
        return Err(Error::Contract(format!(
            "duality gap: primal {primal_value}, dual {dual_value}, value {}",
            s.value
        )));
    }
    Ok(())
}

/// Minimum of `kappa_s` over all multisets of members of size `1..=max_len`.
pub fn intersection_number_bruteforce(collection: &Collection, max_len: usize) -> Result<Rational> {
    intersection_number_bruteforce_with_budget(collection, max_len, DEFAULT_BRUTE_BUDGET)
}

pub fn intersection_number_bruteforce_with_budget(
    collection: &Collection,
    max_len: usize,
    budget: u128,
) -> Result<Rational> {
    if collection.is_empty() {
        return Err(Error::Empty("collection"));
    }
    if max_len == 0 {
        return Err(Error::Input("max_len must be at least 1".into()));
    }
    let mut distinct: Vec<Element> = collection.members().to_vec();
    distinct.sort();
    distinct.dedup();
    let r = distinct.len() as u128;
    // Number of multisets of size 1..=max_len from r kinds.
    let mut total: u128 = 0;
    let mut layer: u128 = 1;
    for len in 1..=max_len as u128 {
        layer = layer.saturating_mul(r + len - 1) / len;
        total = total.saturating_add(layer);
        if total > budget {
            return Err(Error::TooLarge {
                what: "multiset enumeration",
                size: total,
                cap: budget,
            });
        }
    }

    let atoms: Vec<Vec<usize>> = distinct.iter().map(|c| c.to_atoms()).collect();
    let mut search = Brute {
        atoms: &atoms,
        counts: vec![0; collection.space().atom_count()],
        max_len,
        best: (1, 1),
    };
    search.descend(0, 0);
    let (depth, len) = search.best;
    Ok(Rational::new(BigInt::from(depth), BigInt::from(len)))
}

struct Brute<'a> {
    atoms: &'a [Vec<usize>],
    counts: Vec<usize>,
    max_len: usize,
    best: (usize, usize),
}

impl Brute<'_> {
    fn descend(&mut self, start: usize, len: usize) {
        for i in start..self.atoms.len() {
            for &x in &self.atoms[i] {
                self.counts[x] += 1;
            }
            let depth = *self.counts.iter().max().expect("nonempty space");
            let (bd, bl) = self.best;
            if depth * bl < bd * (len + 1) {
                self.best = (depth, len + 1);
            }
            if len + 1 < self.max_len {
                self.descend(i, len + 1);
            }
            for &x in &self.atoms[i] {
                self.counts[x] -= 1;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::enumerate_nonzero;
    use crate::rational::{int, ratio};

    fn space(n: usize) -> AtomSpace {
        AtomSpace::new(n).unwrap()
    }

    fn el(s: AtomSpace, atoms: &[usize]) -> Element {
        Element::from_atoms(s, atoms).unwrap()
    }

    fn two_subsets_of_four() -> Collection {
        let s = space(4);
        let members = enumerate_nonzero(s)
            .unwrap()
            .into_iter()
            .filter(|e| e.len() == 2)
            .collect();
        Collection::new(s, members).unwrap()
    }

    #[test]
    fn sequence_examples() {
        let s = space(3);
        let single = kappa_of_sequence(&[el(s, &[0, 1])]).unwrap();
        assert_eq!(single.kappa, int(1));
        let disjoint = kappa_of_sequence(&[el(s, &[0]), el(s, &[1]), el(s, &[2])]).unwrap();
        assert_eq!(disjoint.kappa, ratio(1, 3));
        assert_eq!(disjoint.depth, 1);
        assert_eq!(disjoint.witness_atom, 0);
        assert_eq!(disjoint.indices, vec![0]);
    }

    #[test]
    fn sequence_errors() {
        let s = space(2);
        assert_eq!(kappa_of_sequence(&[]), Err(Error::Empty("sequence")));
        assert_eq!(
            kappa_of_sequence(&[s.unit(), s.zero()]),
            Err(Error::ZeroMember { index: 1 })
        );
    }

    #[test]
    fn singleton_collection_has_kappa_one() {
        let s = space(3);
        let c = Collection::new(s, vec![el(s, &[1, 2])]).unwrap();
        let g = intersection_number(&c).unwrap();
        assert_eq!(g.value, int(1));
        assert_eq!(g.member_weights, vec![int(1)]);
        assert_eq!(intersection_number_bruteforce(&c, 5).unwrap(), int(1));
    }

    #[test]
    fn disjoint_pair() {
        let s = space(2);
        let c = Collection::new(s, vec![el(s, &[0]), el(s, &[1])]).unwrap();
        assert_eq!(intersection_number(&c).unwrap().value, ratio(1, 2));
        assert_eq!(intersection_number_bruteforce(&c, 2).unwrap(), ratio(1, 2));
    }

    #[test]
    fn two_subsets_of_four_atoms() {
        let c = two_subsets_of_four();
        let g = intersection_number(&c).unwrap();
        assert_eq!(g.value, ratio(1, 2));
        assert_eq!(g.atom_weights, vec![ratio(1, 4); 4]);
        assert_eq!(intersection_number_bruteforce(&c, 6).unwrap(), ratio(1, 2));
        // the sequence of all six 2-subsets has depth 3
        assert_eq!(kappa_of_sequence(c.members()).unwrap().depth, 3);
    }

    #[test]
    fn supersets_get_zero_weight() {
        let s = space(2);
        let c = Collection::new(s, vec![s.unit(), el(s, &[0]), el(s, &[1])]).unwrap();
        let g = intersection_number(&c).unwrap();
        assert_eq!(g.value, ratio(1, 2));
        assert_eq!(g.member_weights, vec![int(0), ratio(1, 2), ratio(1, 2)]);
        assert_eq!(intersection_number_bruteforce(&c, 3).unwrap(), ratio(1, 2));
    }

    #[test]
    fn empty_collection_and_budget() {
        let s = space(3);
        let empty = Collection::new(s, vec![]).unwrap();
        assert!(intersection_number(&empty).is_err());
        assert!(intersection_number_bruteforce(&empty, 2).is_err());
        let all = Collection::new(s, enumerate_nonzero(s).unwrap()).unwrap();
        assert!(matches!(
            intersection_number_bruteforce_with_budget(&all, 10, 1000),
            Err(Error::TooLarge { .. })
        ));
    }
}
