//! Exact measure-existence checks on finite Boolean set algebras.
//!
//! Elements are subsets of a fixed set of atoms ([`algebra`]). The
//! intersection number of a collection is computed exactly as the value of a
//! zero-sum game ([`intersection`], on top of the rational simplex in
//! [`lp`]), and the optimal atom strategy is a measure that gives every
//! member at least that value ([`kelley`]).
//!
//! [`fragmentation`] handles nested, upward-closed level systems: validity,
//! gradedness, antichain bounds and threshold levels of measures and
//! submeasures. [`certifier`] certifies a lower bound on the intersection
//! number of every level of a graded fragmentation, and replays the counting
//! argument behind it using the three-point expanders of [`expander`].
//!
//! Values cross process boundaries as JSON via [`records`]; [`generate`]
//! holds the seeded instance generators.
//!
//! ```
//! use measure_algebra::algebra::AtomSpace;
//! use measure_algebra::certifier::certify_fragmentation;
//! use measure_algebra::fragmentation::from_measure;
//! use measure_algebra::kelley::Measure;
//!
//! let m = Measure::uniform(AtomSpace::new(3).unwrap());
//! let cert = certify_fragmentation(&from_measure(&m).unwrap()).unwrap();
//! assert!(cert.levels.iter().all(|l| l.kappa >= l.bound));
//! assert!(cert.measure.is_strictly_positive());
//! ```

pub mod algebra;
pub mod certifier;
pub mod error;
pub mod expander;
pub mod fragmentation;
pub mod generate;
pub mod intersection;
pub mod kelley;
pub mod lp;
pub mod rational;
pub mod records;

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/introduction.md")]
mod book_introduction {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/algebras.md")]
mod book_algebras {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/intersection.md")]
mod book_intersection {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/measures.md")]
mod book_measures {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/fragmentations.md")]
mod book_fragmentations {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/expanders.md")]
mod book_expanders {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/certification.md")]
mod book_certification {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/cli.md")]
mod book_cli {}
