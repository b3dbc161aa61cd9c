use std::collections::BTreeMap;

use crate::CoreError;

/// Tri-degree: homological filtration `s` and internal degree `t`.
/// The total degree of a class is `s + t`; the third grading (weight)
/// is carried separately because it lives in Z/(p-1).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct TriDeg {
    pub s: i64,
    pub t: i64,
}

impl TriDeg {
    pub const ZERO: TriDeg = TriDeg { s: 0, t: 0 };

    pub fn new(s: i64, t: i64) -> Self {
        TriDeg { s, t }
    }

    /// Internal degree only, filtration zero.
    pub fn internal(t: i64) -> Self {
        TriDeg { s: 0, t }
    }

    pub fn total(&self) -> i64 {
        self.s + self.t
    }

    pub fn add(&self, other: &TriDeg) -> TriDeg {
        TriDeg {
            s: self.s + other.s,
            t: self.t + other.t,
        }
    }

    pub fn scale(&self, k: i64) -> TriDeg {
        TriDeg {
            s: self.s * k,
            t: self.t * k,
        }
    }

    pub fn is_odd(&self) -> bool {
        self.total().rem_euclid(2) == 1
    }
}

/// Exponent discipline of a generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GenKind {
    /// Exponent in {0, 1}.
    Exterior,
    /// Exponent >= 0.
    Polynomial,
    /// Exponent in [0, h).
    Truncated(u32),
    /// Exponent any integer, read as powers of g^step.
    Laurent(u32),
}

impl GenKind {
    pub fn max_exponent(&self) -> Option<i64> {
        match self {
            GenKind::Exterior => Some(1),
            GenKind::Truncated(h) => Some(*h as i64 - 1),
            GenKind::Polynomial | GenKind::Laurent(_) => None,
        }
    }

    pub fn allows_negative(&self) -> bool {
        matches!(self, GenKind::Laurent(_))
    }

    /// Degree step per unit exponent (`step * |g|` for Laurent).
    pub fn exponent_stride(&self) -> i64 {
        match self {
            GenKind::Laurent(k) => *k as i64,
            _ => 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSpec {
    pub name: String,
    pub kind: GenKind,
    pub degree: TriDeg,
    /// Residue mod (p-1).
    pub weight: u32,
}

impl GeneratorSpec {
    pub fn new(name: &str, kind: GenKind, degree: TriDeg, weight: u32) -> Self {
        GeneratorSpec {
            name: name.to_string(),
            kind,
            degree,
            weight,
        }
    }

    /// Tri-degree contributed by exponent `e` (Laurent steps included).
    pub fn degree_at(&self, e: i64) -> TriDeg {
        self.degree.scale(e * self.kind.exponent_stride())
    }

    pub fn weight_at(&self, e: i64, p: u64) -> u32 {
        let w = self.weight as i64 * e * self.kind.exponent_stride();
        w.rem_euclid(p as i64 - 1) as u32
    }
}

pub type GenId = u32;

/// Immutable generator table. Generators are kept sorted by name, so
/// `GenId` order is name-lexicographic and monomial comparison in id
/// order realizes the documented monomial order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gens {
    list: Vec<GeneratorSpec>,
    by_name: BTreeMap<String, GenId>,
}

impl Gens {
    pub fn new(mut list: Vec<GeneratorSpec>) -> Result<Self, CoreError> {
        list.sort_by(|a, b| a.name.cmp(&b.name));
        let mut by_name = BTreeMap::new();
        for (i, g) in list.iter().enumerate() {
            if by_name.insert(g.name.clone(), i as GenId).is_some() {
                return Err(CoreError::DuplicateGenerator(g.name.clone()));
            }
        }
        Ok(Gens { list, by_name })
    }

    pub fn id(&self, name: &str) -> Result<GenId, CoreError> {
        self.by_name
            .get(name)
            .copied()
            .ok_or_else(|| CoreError::UnknownGenerator(name.to_string()))
    }

    pub fn get(&self, id: GenId) -> &GeneratorSpec {
        &self.list[id as usize]
    }

    pub fn len(&self) -> usize {
        self.list.len()
    }

    pub fn is_empty(&self) -> bool {
        self.list.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (GenId, &GeneratorSpec)> {
        self.list.iter().enumerate().map(|(i, g)| (i as GenId, g))
    }
}
