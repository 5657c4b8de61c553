//! Finitely additive measures on finite set algebras.
//!
//! A measure is determined by its atom weights: `m(a)` is the sum of the
//! weights of the atoms of `a`. Additivity on disjoint elements then holds by
//! construction, and strict positivity is the same as every atom weight
//! being positive.

use num::{One, Signed, Zero};

use crate::algebra::{AtomSpace, Collection, Element, DEFAULT_ENUMERATION_CAP};
use crate::error::{Error, Result};
use crate::fragmentation::Fragmentation;
use crate::intersection::intersection_number;
use crate::rational::{self, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Measure {
    space: AtomSpace,
    weights: Vec<Rational>,
}

impl Measure {
    /// Weights must be nonnegative and sum to one.
    pub fn new(space: AtomSpace, weights: Vec<Rational>) -> Result<Self> {
        if weights.len() != space.atom_count() {
            return Err(Error::Input(format!(
                "expected {} atom weights, got {}",
                space.atom_count(),
                weights.len()
            )));
        }
        if let Some(x) = weights.iter().position(|w| w.is_negative()) {
            return Err(Error::Input(format!("weight of atom {x} is negative")));
        }
        let total: Rational = weights.iter().sum();
        if !total.is_one() {
            return Err(Error::Input(format!(
                "weights sum to {}, not 1",
                rational::to_string(&total)
            )));
        }
        Ok(Measure { space, weights })
    }

    pub fn uniform(space: AtomSpace) -> Self {
        let w = rational::ratio(1, space.atom_count() as i64);
        Measure {
            space,
            weights: vec![w; space.atom_count()],
        }
    }

    pub fn space(&self) -> AtomSpace {
        self.space
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn is_strictly_positive(&self) -> bool {
        self.weights.iter().all(|w| w.is_positive())
    }

    pub fn eval(&self, a: &Element) -> Result<Rational> {
        measure_eval(self, a)
    }

    pub(crate) fn eval_unchecked(&self, a: &Element) -> Rational {
        a.atoms().map(|x| &self.weights[x]).sum()
    }

    /// Exhaustively checks normalization, strict positivity and additivity
    /// on disjoint pairs by evaluating [`measure_eval`] on every element.
    pub fn check_axioms(&self) -> Result<()> {
        self.space.ensure_enumerable(DEFAULT_ENUMERATION_CAP)?;
        let n = self.space.atom_count();
        let table: Vec<Rational> = (0..1u64 << n)
            .map(|mask| measure_eval(self, &self.space.mask_element(mask)))
            .collect::<Result<_>>()?;
        let full = (1u64 << n) - 1;
        if !table[0].is_zero() {
            return Err(Error::Contract("m(0) != 0".into()));
        }
        if !table[full as usize].is_one() {
            return Err(Error::Contract("m(1) != 1".into()));
        }
        if let Some(mask) = (1..=full).find(|&a| !table[a as usize].is_positive()) {
            return Err(Error::Contract(format!(
                "m({}) is not positive",
                self.space.mask_element(mask)
            )));
        }
        for a in 1..=full {
            let rest = full & !a;
            // b ranges over the nonzero submasks of the complement of a
            let mut b = rest;
            while b != 0 {
                if table[(a | b) as usize] != &table[a as usize] + &table[b as usize] {
                    return Err(Error::Contract(format!(
                        "additivity fails at {} and {}",
                        self.space.mask_element(a),
                        self.space.mask_element(b)
                    )));
                }
                b = (b - 1) & rest;
            }
        }
        Ok(())
    }
}

pub fn measure_eval(m: &Measure, a: &Element) -> Result<Rational> {
    if a.space() != m.space {
        return Err(Error::mismatch(m.space, a.space()));
    }
    Ok(m.eval_unchecked(a))
}

/// A measure `m` with `m(c) >= kappa` for every member, where `kappa` is the
/// intersection number of the collection.
///
/// The measure is the optimal atom strategy of the intersection game. It
/// need not be strictly positive.
pub fn measure_from_collection(collection: &Collection) -> Result<(Measure, Rational)> {
    let game = intersection_number(collection)?;
    if !game.value.is_positive() {
        return Err(Error::Contract(
            "intersection number is not positive".into(),
        ));
    }
    let measure = Measure::new(collection.space(), game.atom_weights)?;
    Ok((measure, game.value))
}

/// Combines one measure per fragmentation level into a strictly positive
/// measure.
///
/// Level `n` (counting from one) gets weight `2^-n`, and the result is
/// renormalized by the total weight. Each pair `(m_n, kappa_n)` must satisfy
/// `m_n(c) >= kappa_n > 0` on the level, and the fragmentation must cover
/// the nonzero elements; then every `a != 0` lies in some level and receives
/// at least `2^-n kappa_n / sum_j 2^-j`.
pub fn combine_measures(
    levels: &[(Measure, Rational)],
    fragmentation: &Fragmentation,
) -> Result<Measure> {
    let space = fragmentation.space();
    if levels.is_empty() {
        return Err(Error::Empty("level measures"));
    }
    if levels.len() != fragmentation.depth() {
        return Err(Error::Input(format!(
            "{} level measures for {} levels",
            levels.len(),
            fragmentation.depth()
        )));
    }
    for (i, (m, kappa)) in levels.iter().enumerate() {
        let level = i + 1;
        if m.space != space {
            return Err(Error::mismatch(space, m.space));
        }
        if !kappa.is_positive() {
            return Err(Error::Contract(format!(
                "level {level}: kappa is not positive"
            )));
        }
        // m is monotone, so minimal members are the binding ones
        for c in fragmentation.level(level).minimal_elements() {
            if m.eval_unchecked(&c) < *kappa {
                return Err(Error::Contract(format!(
                    "level {level}: m({c}) = {} is below kappa {}",
                    rational::to_string(&m.eval_unchecked(&c)),
                    rational::to_string(kappa)
                )));
            }
        }
    }
    // Every nonzero element lies above an atom, so covering the atoms is
    // what strict positivity needs.
    if let Some(x) = fragmentation.uncovered_atom() {
        return Err(Error::Contract(format!("atom {x} lies in no level")));
    }

    let mut weights = vec![Rational::zero(); space.atom_count()];
    let mut total = Rational::zero();
    for (i, (m, _)) in levels.iter().enumerate() {
        let scale = rational::pow2_inv(i as u32 + 1);
        for (w, mw) in weights.iter_mut().zip(&m.weights) {
            *w += &scale * mw;
        }
        total += scale;
    }
    for w in weights.iter_mut() {
        *w /= &total;
    }
    let combined = Measure::new(space, weights)?;
    if !combined.is_strictly_positive() {
        return Err(Error::Contract("combined measure has a zero atom".into()));
    }
    Ok(combined)
}
