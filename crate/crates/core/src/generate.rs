//! Seeded instance generators.
//!
//! All generators draw from a caller-supplied [`Rng`]; the CLI and the test
//! suites seed a `ChaCha8Rng`, so output is reproducible across platforms.

use rand::Rng;

use crate::algebra::{AtomSpace, Collection, Element};
use crate::error::{Error, Result};
use crate::fragmentation::{from_measure, from_submeasure, Fragmentation, Level, Submeasure};
use crate::kelley::Measure;
use crate::rational::int;

/// Default upper bound for the integer weights of [`random_measure`].
pub const DEFAULT_WEIGHT_CAP: u32 = 9;

/// Atom weights `w_x / Σ w`, with integers `w_x` uniform in `1..=cap`.
pub fn random_measure<R: Rng>(space: AtomSpace, cap: u32, rng: &mut R) -> Result<Measure> {
    if cap == 0 {
        return Err(Error::Input("weight cap must be at least 1".into()));
    }
    let raw: Vec<i64> = (0..space.atom_count())
        .map(|_| rng.gen_range(1..=cap as i64))
        .collect();
    let total = int(raw.iter().sum());
    let weights = raw.into_iter().map(|w| int(w) / &total).collect();
    Measure::new(space, weights)
}

/// Pointwise maximum of `1..=3` random measures.
pub fn random_submeasure<R: Rng>(space: AtomSpace, cap: u32, rng: &mut R) -> Result<Submeasure> {
    let count = rng.gen_range(1..=3);
    let measures = (0..count)
        .map(|_| random_measure(space, cap, rng))
        .collect::<Result<Vec<_>>>()?;
    Submeasure::max_of(&measures)
}

/// A uniformly random nonzero element.
pub fn random_element<R: Rng>(space: AtomSpace, rng: &mut R) -> Element {
    loop {
        let atoms: Vec<usize> = (0..space.atom_count())
            .filter(|_| rng.gen_bool(0.5))
            .collect();
        if !atoms.is_empty() {
            return Element::from_atoms(space, &atoms).expect("sorted, in range");
        }
    }
}

/// `size` random nonzero members; repeats are allowed.
pub fn random_collection<R: Rng>(space: AtomSpace, size: usize, rng: &mut R) -> Result<Collection> {
    if size == 0 {
        return Err(Error::Empty("collection"));
    }
    let members = (0..size).map(|_| random_element(space, rng)).collect();
    Collection::new(space, members)
}

/// Threshold fragmentation of a random measure.
pub fn random_measure_fragmentation<R: Rng>(
    space: AtomSpace,
    cap: u32,
    rng: &mut R,
) -> Result<Fragmentation> {
    from_measure(&random_measure(space, cap, rng)?)
}

/// Threshold fragmentation of a random submeasure.
pub fn random_submeasure_fragmentation<R: Rng>(
    space: AtomSpace,
    cap: u32,
    rng: &mut R,
) -> Result<Fragmentation> {
    from_submeasure(&random_submeasure(space, cap, rng)?)
}

/// Pair-incidence fixture on `points` points.
///
/// One atom per pair `{i, j}` (colex order), `c_i` the pairs containing
/// `i`. The `c_i` meet pairwise and no atom lies in three of them. Levels
/// `1..=3` are the upward closure of the `c_i`, level 4 is everything. The
/// first level is not graded: a split of `c_i` into two halves stays out of
/// level 2.
pub fn pair_incidence(points: usize) -> Result<(Fragmentation, Vec<Element>)> {
    if points < 3 {
        return Err(Error::Input(
            "pair incidence needs at least 3 points".into(),
        ));
    }
    let space = AtomSpace::new(points * (points - 1) / 2)?;
    let atom = |i: usize, j: usize| {
        let (lo, hi) = if i < j { (i, j) } else { (j, i) };
        hi * (hi - 1) / 2 + lo
    };
    let terms: Vec<Element> = (0..points)
        .map(|i| Element::from_unsorted(space, (0..points).filter(|&j| j != i).map(|j| atom(i, j))))
        .collect::<Result<_>>()?;
    let level = Level::up_closure(terms.clone());
    let f = Fragmentation::new(
        space,
        vec![level.clone(), level.clone(), level, Level::full(space)],
    )?;
    Ok((f, terms))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fragmentation::{check_fragmentation, max_antichain};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn measures_are_positive_and_reproducible() {
        let s = AtomSpace::new(6).unwrap();
        let a = random_measure(s, 9, &mut ChaCha8Rng::seed_from_u64(7)).unwrap();
        let b = random_measure(s, 9, &mut ChaCha8Rng::seed_from_u64(7)).unwrap();
        assert_eq!(a, b);
        assert!(a.is_strictly_positive());
        a.check_axioms().unwrap();
    }

    #[test]
    fn submeasure_and_fragmentations() {
        let s = AtomSpace::new(5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        random_submeasure(s, 9, &mut rng).unwrap();
        let f = random_submeasure_fragmentation(s, 9, &mut rng).unwrap();
        check_fragmentation(&f).unwrap();
        let c = random_collection(s, 4, &mut rng).unwrap();
        assert_eq!(c.len(), 4);
    }

    #[test]
    fn pair_incidence_shape() {
        let (f, terms) = pair_incidence(6).unwrap();
        assert_eq!(f.space().atom_count(), 15);
        assert!(terms.iter().all(|c| c.len() == 5));
        check_fragmentation(&f).unwrap();
        assert_eq!(max_antichain(&f, 3).unwrap().size, 1);
    }
}
