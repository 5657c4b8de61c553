//! Finite Boolean set algebras.
//!
//! An algebra is the power set of a ground set of `atom_count` atoms. An
//! [`Element`] is a subset of the atoms, stored as a packed bitset; the zero
//! element is the empty set and the unit element is the whole ground set.
//! Because the algebra is a set algebra, a finite family of elements has a
//! nonzero meet exactly when some atom lies in all of them.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{BitAnd, BitOr, Not, Sub};

use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Default bound on the number of atoms for operations that enumerate the
/// whole algebra.
pub const DEFAULT_ENUMERATION_CAP: usize = 16;

const WORD: usize = 64;

/// The ground set `{0, .., atom_count - 1}` of a finite set algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AtomSpace {
    atom_count: usize,
}

impl AtomSpace {
    pub fn new(atom_count: usize) -> Result<Self> {
        if atom_count == 0 {
            return Err(Error::EmptyAtomSpace);
        }
        Ok(AtomSpace { atom_count })
    }

    pub fn atom_count(self) -> usize {
        self.atom_count
    }

    fn words(self) -> usize {
        self.atom_count.div_ceil(WORD)
    }

    pub fn zero(self) -> Element {
        Element {
            space: self,
            words: SmallVec::from_elem(0, self.words()),
        }
    }

    pub fn unit(self) -> Element {
        !&self.zero()
    }

    /// The element `{atom}`.
    pub fn singleton(self, atom: usize) -> Result<Element> {
        Element::from_atoms(self, &[atom])
    }

    pub fn singletons(self) -> impl Iterator<Item = Element> {
        (0..self.atom_count).map(move |x| {
            let mut e = self.zero();
            e.insert(x);
            e
        })
    }

    /// Checks the space against an enumeration cap.
    pub fn ensure_enumerable(self, cap: usize) -> Result<()> {
        if self.atom_count > cap {
            return Err(Error::TooLarge {
                what: "atom count for exhaustive enumeration",
                size: self.atom_count as u128,
                cap: cap as u128,
            });
        }
        Ok(())
    }

    /// Builds an element from a bitmask over the first 64 atoms.
    pub(crate) fn mask_element(self, mask: u64) -> Element {
        debug_assert!(self.atom_count <= WORD);
        let mut e = self.zero();
        e.words[0] = mask;
        e
    }
}

/// A subset of the atoms of an [`AtomSpace`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Element {
    space: AtomSpace,
    words: SmallVec<[u64; 2]>,
}

impl Element {
    /// Builds an element from a strictly increasing atom list.
    pub fn from_atoms(space: AtomSpace, atoms: &[usize]) -> Result<Self> {
        let mut e = space.zero();
        for (position, &atom) in atoms.iter().enumerate() {
            if atom >= space.atom_count {
                return Err(Error::AtomOutOfRange {
                    atom,
                    atom_count: space.atom_count,
                });
            }
            if position > 0 && atoms[position - 1] >= atom {
                return Err(Error::UnsortedAtoms { position });
            }
            e.insert(atom);
        }
        Ok(e)
    }

    /// Like [`Element::from_atoms`] but accepts any order and repeats.
    pub fn from_unsorted(space: AtomSpace, atoms: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut e = space.zero();
        for atom in atoms {
            if atom >= space.atom_count {
                return Err(Error::AtomOutOfRange {
                    atom,
                    atom_count: space.atom_count,
                });
            }
            e.insert(atom);
        }
        Ok(e)
    }

    pub fn space(&self) -> AtomSpace {
        self.space
    }

    fn insert(&mut self, atom: usize) {
        self.words[atom / WORD] |= 1 << (atom % WORD);
    }

    pub fn contains(&self, atom: usize) -> bool {
        atom < self.space.atom_count && self.words[atom / WORD] >> (atom % WORD) & 1 == 1
    }

    /// Number of atoms below this element.
    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_unit(&self) -> bool {
        self.len() == self.space.atom_count
    }

    /// Atoms in increasing order.
    pub fn atoms(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let bit = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(i * WORD + bit)
            })
        })
    }

    pub fn to_atoms(&self) -> Vec<usize> {
        self.atoms().collect()
    }

    pub fn first_atom(&self) -> Option<usize> {
        self.atoms().next()
    }

    /// Bitmask form for spaces of at most 64 atoms.
    pub(crate) fn mask(&self) -> u64 {
        debug_assert!(self.space.atom_count <= WORD);
        self.words[0]
    }

    pub fn is_subset(&self, other: &Element) -> bool {
        self.assert_same_space(other);
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &Element) -> bool {
        self.assert_same_space(other);
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    pub fn intersects(&self, other: &Element) -> bool {
        !self.is_disjoint(other)
    }

    /// All sub-elements of `self`, including zero and `self`.
    ///
    /// The `t`-th item takes the atoms of `self` selected by the binary
    /// digits of `t`, least significant digit first.
    pub fn subsets(&self) -> impl Iterator<Item = Element> + '_ {
        let atoms = self.to_atoms();
        assert!(atoms.len() < 63, "too many atoms to enumerate subsets");
        (0..1u64 << atoms.len()).map(move |t| {
            let mut e = self.space.zero();
            for (pos, &atom) in atoms.iter().enumerate() {
                if t >> pos & 1 == 1 {
                    e.insert(atom);
                }
            }
            e
        })
    }

    fn assert_same_space(&self, other: &Element) {
        assert_eq!(
            self.space, other.space,
            "elements from different atom spaces"
        );
    }

    fn zip_with(&self, other: &Element, f: impl Fn(u64, u64) -> u64) -> Element {
        self.assert_same_space(other);
        Element {
            space: self.space,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.atoms()).finish()
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, a) in self.atoms().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, "}}")
    }
}

/// Canonical order: by atom space, then by size, then lexicographically on
/// the sorted atom lists.
impl Ord for Element {
    fn cmp(&self, other: &Self) -> Ordering {
        self.space
            .cmp(&other.space)
            .then_with(|| self.len().cmp(&other.len()))
            .then_with(|| self.atoms().cmp(other.atoms()))
    }
}

impl PartialOrd for Element {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl BitOr for &Element {
    type Output = Element;
    fn bitor(self, rhs: &Element) -> Element {
        self.zip_with(rhs, |a, b| a | b)
    }
}

impl BitAnd for &Element {
    type Output = Element;
    fn bitand(self, rhs: &Element) -> Element {
        self.zip_with(rhs, |a, b| a & b)
    }
}

impl Sub for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        self.zip_with(rhs, |a, b| a & !b)
    }
}

impl Not for &Element {
    type Output = Element;
    fn not(self) -> Element {
        let mut words: SmallVec<[u64; 2]> = self.words.iter().map(|w| !w).collect();
        let tail = self.space.atom_count % WORD;
        if tail != 0 {
            if let Some(last) = words.last_mut() {
                *last &= (1u64 << tail) - 1;
            }
        }
        Element {
            space: self.space,
            words,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoolOp {
    Union,
    Intersection,
    Complement,
    Difference,
}

/// Evaluates a Boolean operation. `b` must be absent exactly for
/// [`BoolOp::Complement`].
pub fn apply_boolean(op: BoolOp, a: &Element, b: Option<&Element>) -> Result<Element> {
    match (op, b) {
        (BoolOp::Complement, None) => Ok(!a),
        (BoolOp::Complement, Some(_)) => Err(Error::Input("complement takes one operand".into())),
        (_, None) => Err(Error::Input(format!("{op:?} takes two operands"))),
        (op, Some(b)) => {
            if a.space != b.space {
                return Err(Error::mismatch(a.space, b.space));
            }
            Ok(match op {
                BoolOp::Union => a | b,
                BoolOp::Intersection => a & b,
                BoolOp::Difference => a - b,
                BoolOp::Complement => unreachable!(),
            })
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderRel {
    Leq,
    Disjoint,
    Equal,
}

pub fn order_test(rel: OrderRel, a: &Element, b: &Element) -> Result<bool> {
    if a.space != b.space {
        return Err(Error::mismatch(a.space, b.space));
    }
    Ok(match rel {
        OrderRel::Leq => a.is_subset(b),
        OrderRel::Disjoint => a.is_disjoint(b),
        OrderRel::Equal => a == b,
    })
}

/// All nonzero elements in canonical order, for spaces within
/// [`DEFAULT_ENUMERATION_CAP`].
pub fn enumerate_nonzero(space: AtomSpace) -> Result<Vec<Element>> {
    enumerate_nonzero_with_cap(space, DEFAULT_ENUMERATION_CAP)
}

pub fn enumerate_nonzero_with_cap(space: AtomSpace, cap: usize) -> Result<Vec<Element>> {
    space.ensure_enumerable(cap.min(WORD - 1))?;
    let mut all: Vec<Element> = (1..1u64 << space.atom_count)
        .map(|mask| space.mask_element(mask))
        .collect();
    all.sort();
    Ok(all)
}

/// A finite list of nonzero elements of one algebra. Repetition is allowed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Collection {
    space: AtomSpace,
    members: Vec<Element>,
}

impl Collection {
    pub fn new(space: AtomSpace, members: Vec<Element>) -> Result<Self> {
        for (index, m) in members.iter().enumerate() {
            if m.space != space {
                return Err(Error::mismatch(space, m.space));
            }
            if m.is_zero() {
                return Err(Error::ZeroMember { index });
            }
        }
        Ok(Collection { space, members })
    }

    pub fn space(&self) -> AtomSpace {
        self.space
    }

    pub fn members(&self) -> &[Element] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Indices of the members that are inclusion-minimal, keeping only the
    /// first occurrence of repeated members.
    pub fn minimal_indices(&self) -> Vec<usize> {
        minimal_indices(&self.members)
    }
}

/// Indices of inclusion-minimal elements of `items`, first occurrence only,
/// in index order.
pub(crate) fn minimal_indices(items: &[Element]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..items.len()).collect();
    order.sort_by_key(|&i| (items[i].len(), i));
    let mut kept: Vec<usize> = Vec::new();
    for i in order {
        if !kept.iter().any(|&j| items[j].is_subset(&items[i])) {
            kept.push(i);
        }
    }
    kept.sort_unstable();
    kept
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(space: AtomSpace, atoms: &[usize]) -> Element {
        Element::from_atoms(space, atoms).unwrap()
    }

    #[test]
    fn boolean_examples() {
        let s3 = AtomSpace::new(3).unwrap();
        let u = apply_boolean(BoolOp::Union, &el(s3, &[0, 1]), Some(&el(s3, &[1, 2]))).unwrap();
        assert_eq!(u, el(s3, &[0, 1, 2]));
        let c = apply_boolean(BoolOp::Complement, &s3.zero(), None).unwrap();
        assert_eq!(c.to_atoms(), vec![0, 1, 2]);
        let i = apply_boolean(BoolOp::Intersection, &el(s3, &[0]), Some(&el(s3, &[1]))).unwrap();
        assert!(i.is_zero());
        let d = apply_boolean(BoolOp::Difference, &s3.unit(), Some(&el(s3, &[1]))).unwrap();
        assert_eq!(d, el(s3, &[0, 2]));
    }

    #[test]
    fn operand_arity_and_space_checks() {
        let s2 = AtomSpace::new(2).unwrap();
        let s3 = AtomSpace::new(3).unwrap();
        assert!(matches!(
            apply_boolean(BoolOp::Union, &s2.unit(), Some(&s3.unit())),
            Err(Error::SpaceMismatch { left: 2, right: 3 })
        ));
        assert!(apply_boolean(BoolOp::Union, &s2.unit(), None).is_err());
        assert!(apply_boolean(BoolOp::Complement, &s2.unit(), Some(&s2.unit())).is_err());
        assert!(order_test(OrderRel::Leq, &s2.zero(), &s3.zero()).is_err());
    }

    #[test]
    fn order_examples() {
        let s = AtomSpace::new(2).unwrap();
        assert!(order_test(OrderRel::Leq, &el(s, &[0]), &el(s, &[0, 1])).unwrap());
        assert!(!order_test(OrderRel::Disjoint, &el(s, &[0]), &el(s, &[0, 1])).unwrap());
        for b in enumerate_nonzero(s).unwrap() {
            assert!(order_test(OrderRel::Leq, &s.zero(), &b).unwrap());
        }
        assert!(order_test(OrderRel::Equal, &el(s, &[1]), &el(s, &[1])).unwrap());
    }

    #[test]
    fn element_validation() {
        let s = AtomSpace::new(3).unwrap();
        assert!(matches!(
            Element::from_atoms(s, &[0, 3]),
            Err(Error::AtomOutOfRange { atom: 3, .. })
        ));
        assert!(matches!(
            Element::from_atoms(s, &[1, 1]),
            Err(Error::UnsortedAtoms { position: 1 })
        ));
        assert!(AtomSpace::new(0).is_err());
    }

    #[test]
    fn enumeration_examples() {
        let s1 = AtomSpace::new(1).unwrap();
        assert_eq!(enumerate_nonzero(s1).unwrap(), vec![el(s1, &[0])]);
        let s2 = AtomSpace::new(2).unwrap();
        assert_eq!(
            enumerate_nonzero(s2).unwrap(),
            vec![el(s2, &[0]), el(s2, &[1]), el(s2, &[0, 1])]
        );
        assert_eq!(
            enumerate_nonzero(AtomSpace::new(3).unwrap()).unwrap().len(),
            7
        );
        assert!(matches!(
            enumerate_nonzero(AtomSpace::new(17).unwrap()),
            Err(Error::TooLarge { .. })
        ));
    }

    #[test]
    fn enumeration_is_duplicate_free() {
        for n in 1..=8 {
            let s = AtomSpace::new(n).unwrap();
            let all = enumerate_nonzero(s).unwrap();
            assert_eq!(all.len(), (1 << n) - 1);
            assert!(all.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn lattice_laws_exhaustive() {
        for n in 1..=4 {
            let s = AtomSpace::new(n).unwrap();
            let mut all = enumerate_nonzero(s).unwrap();
            all.push(s.zero());
            for a in &all {
                for b in &all {
                    assert_eq!(!&(a | b), &!a & &!b, "de morgan");
                    assert_eq!(a.is_subset(b), &(a | b) == b);
                    assert_eq!(a.is_disjoint(b), (a & b).is_zero());
                }
            }
        }
    }

    #[test]
    fn wide_spaces_mask_the_tail() {
        let s = AtomSpace::new(130).unwrap();
        let u = s.unit();
        assert_eq!(u.len(), 130);
        assert!((!&u).is_zero());
        let e = el(s, &[0, 64, 129]);
        assert_eq!(e.to_atoms(), vec![0, 64, 129]);
        assert_eq!((!&e).len(), 127);
    }

    #[test]
    fn subsets_start_with_lowest_atom() {
        let s = AtomSpace::new(3).unwrap();
        let c = el(s, &[0, 2]);
        let subs: Vec<_> = c.subsets().collect();
        assert_eq!(subs, vec![s.zero(), el(s, &[0]), el(s, &[2]), c.clone()]);
    }

    #[test]
    fn collections_reject_zero() {
        let s = AtomSpace::new(2).unwrap();
        assert!(matches!(
            Collection::new(s, vec![s.unit(), s.zero()]),
            Err(Error::ZeroMember { index: 1 })
        ));
        let c = Collection::new(s, vec![s.unit(), el(s, &[1]), el(s, &[1])]).unwrap();
        assert_eq!(c.minimal_indices(), vec![1]);
    }
}
