//! Serializable forms of the library values.
//!
//! Elements are sorted arrays of atom indices and rationals are `"p/q"`
//! strings. Records carry no atom count of their own; conversion back to
//! library values takes the [`AtomSpace`] from the enclosing
//! [`InstanceFile`] and validates everything.

use std::collections::BTreeMap;

use num::Zero;
use serde::{Deserialize, Serialize};

use crate::algebra::{AtomSpace, Collection, Element};
use crate::error::{Error, Result};
use crate::expander::ExpanderFamily;
use crate::fragmentation::{Fragmentation, Level, Submeasure};
use crate::kelley::Measure;
use crate::rational::{self, Rational};

pub fn element_record(e: &Element) -> Vec<usize> {
    e.to_atoms()
}

pub fn parse_element(space: AtomSpace, atoms: &[usize]) -> Result<Element> {
    Element::from_atoms(space, atoms)
}

fn parse_elements(space: AtomSpace, list: &[Vec<usize>]) -> Result<Vec<Element>> {
    list.iter().map(|a| parse_element(space, a)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MeasureRecord {
    #[serde(with = "rational::serde_vec")]
    pub weights: Vec<Rational>,
}

impl MeasureRecord {
    pub fn from_measure(m: &Measure) -> Self {
        MeasureRecord {
            weights: m.weights().to_vec(),
        }
    }

    pub fn to_measure(&self, space: AtomSpace) -> Result<Measure> {
        Measure::new(space, self.weights.clone())
    }
}

/// Values keyed by the comma-joined atom list. The zero element may be
/// omitted (key `""`); every nonzero element must be present.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubmeasureRecord {
    pub values: BTreeMap<String, String>,
}

pub fn element_key(e: &Element) -> String {
    e.atoms()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn parse_key(space: AtomSpace, key: &str) -> Result<Element> {
    if key.trim().is_empty() {
        return Ok(space.zero());
    }
    let atoms = key
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| Error::Input(format!("malformed element key {key:?}")))
        })
        .collect::<Result<Vec<_>>>()?;
    parse_element(space, &atoms)
}

impl SubmeasureRecord {
    pub fn from_submeasure(phi: &Submeasure) -> Self {
        let space = phi.space();
        let values = crate::algebra::enumerate_nonzero(space)
            .expect("submeasure spaces are enumerable")
            .into_iter()
            .map(|e| {
                let v = rational::to_string(phi.value(&e));
                (element_key(&e), v)
            })
            .collect();
        SubmeasureRecord { values }
    }

    pub fn to_submeasure(&self, space: AtomSpace) -> Result<Submeasure> {
        space.ensure_enumerable(crate::algebra::DEFAULT_ENUMERATION_CAP)?;
        let size = 1usize << space.atom_count();
        let mut table: Vec<Option<Rational>> = vec![None; size];
        table[0] = Some(Rational::zero());
        for (key, value) in &self.values {
            let e = parse_key(space, key)?;
            let mask = e.to_atoms().iter().fold(0usize, |acc, &x| acc | 1 << x);
            table[mask] = Some(rational::parse(value)?);
        }
        let values = table
            .into_iter()
            .enumerate()
            .map(|(mask, v)| {
                v.ok_or_else(|| {
                    let atoms: Vec<usize> = (0..space.atom_count())
                        .filter(|x| mask >> x & 1 == 1)
                        .collect();
                    Error::Input(format!("submeasure has no value for {atoms:?}"))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Submeasure::new(space, values)
    }
}

/// A level is either an explicit member list or `{"up": generators}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum LevelRecord {
    Members(Vec<Vec<usize>>),
    Up { up: Vec<Vec<usize>> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FragmentationRecord {
    pub levels: Vec<LevelRecord>,
}

impl FragmentationRecord {
    pub fn from_fragmentation(f: &Fragmentation) -> Self {
        let levels = f
            .levels()
            .iter()
            .map(|level| match level {
                Level::Members(set) => {
                    LevelRecord::Members(set.iter().map(element_record).collect())
                }
                Level::UpClosure(gens) => LevelRecord::Up {
                    up: gens.iter().map(element_record).collect(),
                },
            })
            .collect();
        FragmentationRecord { levels }
    }

    /// Builds the fragmentation without checking its axioms.
    pub fn to_fragmentation(&self, space: AtomSpace) -> Result<Fragmentation> {
        let levels = self
            .levels
            .iter()
            .map(|l| {
                Ok(match l {
                    LevelRecord::Members(list) => Level::members(parse_elements(space, list)?),
                    LevelRecord::Up { up } => Level::up_closure(parse_elements(space, up)?),
                })
            })
            .collect::<Result<_>>()?;
        Fragmentation::new(space, levels)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpanderRecord {
    pub m: usize,
    pub p: usize,
    pub k: usize,
    pub sets: Vec<[usize; 3]>,
}

impl ExpanderRecord {
    pub fn from_family(f: &ExpanderFamily) -> Self {
        ExpanderRecord {
            m: f.m(),
            p: f.p(),
            k: f.k(),
            sets: f.sets().to_vec(),
        }
    }

    pub fn to_family(&self) -> Result<ExpanderFamily> {
        ExpanderFamily::new(self.m, self.p, self.k, self.sets.clone())
    }
}

/// The interchange file read and written by the command line tool.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub atom_count: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub collection: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub measure: Option<MeasureRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub submeasure: Option<SubmeasureRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fragmentation: Option<FragmentationRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expander: Option<ExpanderRecord>,
}

impl InstanceFile {
    pub fn new(atom_count: usize) -> Self {
        InstanceFile {
            atom_count,
            collection: None,
            measure: None,
            submeasure: None,
            fragmentation: None,
            expander: None,
        }
    }

    pub fn space(&self) -> Result<AtomSpace> {
        AtomSpace::new(self.atom_count)
    }

    pub fn with_collection(mut self, c: &Collection) -> Self {
        self.collection = Some(c.members().iter().map(element_record).collect());
        self
    }

    pub fn with_measure(mut self, m: &Measure) -> Self {
        self.measure = Some(MeasureRecord::from_measure(m));
        self
    }

    pub fn with_submeasure(mut self, phi: &Submeasure) -> Self {
        self.submeasure = Some(SubmeasureRecord::from_submeasure(phi));
        self
    }

    pub fn with_fragmentation(mut self, f: &Fragmentation) -> Self {
        self.fragmentation = Some(FragmentationRecord::from_fragmentation(f));
        self
    }

    pub fn with_expander(mut self, f: &ExpanderFamily) -> Self {
        self.expander = Some(ExpanderRecord::from_family(f));
        self
    }

    pub fn collection(&self) -> Result<Option<Collection>> {
        let space = self.space()?;
        self.collection
            .as_ref()
            .map(|list| Collection::new(space, parse_elements(space, list)?))
            .transpose()
    }

    pub fn measure(&self) -> Result<Option<Measure>> {
        let space = self.space()?;
        self.measure
            .as_ref()
            .map(|r| r.to_measure(space))
            .transpose()
    }

    pub fn submeasure(&self) -> Result<Option<Submeasure>> {
        let space = self.space()?;
        self.submeasure
            .as_ref()
            .map(|r| r.to_submeasure(space))
            .transpose()
    }

    pub fn fragmentation(&self) -> Result<Option<Fragmentation>> {
        let space = self.space()?;
        self.fragmentation
            .as_ref()
            .map(|r| r.to_fragmentation(space))
            .transpose()
    }

    pub fn expander(&self) -> Result<Option<ExpanderFamily>> {
        self.expander.as_ref().map(|r| r.to_family()).transpose()
    }
}
