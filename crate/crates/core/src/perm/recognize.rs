use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{closure, PermGroup, Permutation};

/// Isomorphism types of the small groups that occur as vertex stabilizers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupKind {
    Z5,
    D10,
    D20,
    F20,
    F20xZ2,
    F20xZ4,
    A5,
    S5,
    Z2,
    Z4,
    Z2xZ2,
    Cyclic(u32),
    Dihedral(u32),
    Other(u32),
}

impl GroupKind {
    pub fn order(&self) -> u32 {
        match *self {
            GroupKind::Z5 => 5,
            GroupKind::D10 => 10,
            GroupKind::D20 | GroupKind::F20 => 20,
            GroupKind::F20xZ2 => 40,
            GroupKind::F20xZ4 => 80,
            GroupKind::A5 => 60,
            GroupKind::S5 => 120,
            GroupKind::Z2 => 2,
            GroupKind::Z4 | GroupKind::Z2xZ2 => 4,
            GroupKind::Cyclic(m) | GroupKind::Dihedral(m) | GroupKind::Other(m) => m,
        }
    }

    pub fn is_soluble_stabilizer(&self) -> bool {
        !matches!(self, GroupKind::A5 | GroupKind::S5)
    }
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupKind::Z5 => write!(f, "Z5"),
            GroupKind::D10 => write!(f, "D10"),
            GroupKind::D20 => write!(f, "D20"),
            GroupKind::F20 => write!(f, "F20"),
            GroupKind::F20xZ2 => write!(f, "F20xZ2"),
            GroupKind::F20xZ4 => write!(f, "F20xZ4"),
            GroupKind::A5 => write!(f, "A5"),
            GroupKind::S5 => write!(f, "S5"),
            GroupKind::Z2 => write!(f, "Z2"),
            GroupKind::Z4 => write!(f, "Z4"),
            GroupKind::Z2xZ2 => write!(f, "Z2xZ2"),
            GroupKind::Cyclic(m) => write!(f, "Z{m}"),
            GroupKind::Dihedral(m) => write!(f, "D{m}"),
            GroupKind::Other(m) => write!(f, "Other({m})"),
        }
    }
}

impl FromStr for GroupKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let named = match s {
            "Z5" => Some(GroupKind::Z5),
            "D10" => Some(GroupKind::D10),
            "D20" => Some(GroupKind::D20),
            "F20" => Some(GroupKind::F20),
            "F20xZ2" => Some(GroupKind::F20xZ2),
            "F20xZ4" => Some(GroupKind::F20xZ4),
            "A5" => Some(GroupKind::A5),
            "S5" => Some(GroupKind::S5),
            "Z2" => Some(GroupKind::Z2),
            "Z4" => Some(GroupKind::Z4),
            "Z2xZ2" => Some(GroupKind::Z2xZ2),
            _ => None,
        };
        if let Some(k) = named {
            return Ok(k);
        }
        let num = |t: &str| {
            t.parse::<u32>()
                .map_err(|_| Error::Parse(format!("unknown group kind {s:?}")))
        };
        if let Some(rest) = s.strip_prefix("Other(").and_then(|r| r.strip_suffix(')')) {
            Ok(GroupKind::Other(num(rest)?))
        } else if let Some(rest) = s.strip_prefix('Z') {
            Ok(GroupKind::Cyclic(num(rest)?))
        } else if let Some(rest) = s.strip_prefix('D') {
            Ok(GroupKind::Dihedral(num(rest)?))
        } else {
            Err(Error::Parse(format!("unknown group kind {s:?}")))
        }
    }
}

impl Serialize for GroupKind {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for GroupKind {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

pub const MAX_RECOGNIZED_ORDER: u128 = 240;

/// Identifies the isomorphism type of a group of order at most 240.
pub fn recognize_small_group(group: &PermGroup) -> Result<GroupKind> {
    let n = group.order();
    if n > MAX_RECOGNIZED_ORDER {
        return Err(Error::Unsupported(format!(
            "recognition of a group of order {n}"
        )));
    }
    let elements = group.elements(MAX_RECOGNIZED_ORDER as usize)?;
    Ok(classify(group, &elements))
}

fn classify(group: &PermGroup, elements: &[Permutation]) -> GroupKind {
    let n = elements.len() as u32;
    let degree = group.degree();
    let orders: Vec<u64> = elements.iter().map(|e| e.order()).collect();
    let census: BTreeMap<u64, u32> = orders.iter().fold(BTreeMap::new(), |mut m, &o| {
        *m.entry(o).or_insert(0) += 1;
        m
    });
    let count = |o: u64| census.get(&o).copied().unwrap_or(0);

    if n == 1 {
        return GroupKind::Cyclic(1);
    }
    if count(n as u64) > 0 {
        return match n {
            2 => GroupKind::Z2,
            4 => GroupKind::Z4,
            5 => GroupKind::Z5,
            _ => GroupKind::Cyclic(n),
        };
    }
    if n == 4 {
        return GroupKind::Z2xZ2;
    }
    if n >= 6 && n.is_multiple_of(2) {
        if let Some(i) = orders.iter().position(|&o| o == (n / 2) as u64) {
            let r = &elements[i];
            let rotations: Vec<Permutation> = (0..(n / 2) as i64).map(|k| r.pow(k)).collect();
            let dihedral = elements
                .iter()
                .zip(&orders)
                .all(|(e, &o)| rotations.contains(e) || o == 2);
            if dihedral {
                return match n {
                    10 => GroupKind::D10,
                    20 => GroupKind::D20,
                    _ => GroupKind::Dihedral(n),
                };
            }
        }
    }
    let derived = derived_subgroup_order(degree, group.generators());
    match n {
        20 if count(2) == 5 && count(4) == 10 && count(5) == 4 => GroupKind::F20,
        40 if census_is(&census, &[(1, 1), (2, 11), (4, 20), (5, 4), (10, 4)])
            && frobenius_top(elements, &orders) =>
        {
            GroupKind::F20xZ2
        }
        80 if census_is(
            &census,
            &[(1, 1), (2, 11), (4, 52), (5, 4), (10, 4), (20, 8)],
        ) && frobenius_top(elements, &orders) =>
        {
            GroupKind::F20xZ4
        }
        60 if derived == 60 => GroupKind::A5,
        120 if derived == 60 && center_order(elements, group.generators()) == 1 => {
            let gens = derived_generators(degree, group.generators());
            if derived_subgroup_order(degree, &gens) == 60 {
                GroupKind::S5
            } else {
                GroupKind::Other(n)
            }
        }
        _ => GroupKind::Other(n),
    }
}

fn census_is(census: &BTreeMap<u64, u32>, expected: &[(u64, u32)]) -> bool {
    census.len() == expected.len() && expected.iter().all(|(o, c)| census.get(o) == Some(c))
}

/// Normal Sylow 5-subgroup on which the group induces all four automorphisms.
fn frobenius_top(elements: &[Permutation], orders: &[u64]) -> bool {
    let fives: Vec<&Permutation> = elements
        .iter()
        .zip(orders)
        .filter(|(_, &o)| o == 5)
        .map(|(e, _)| e)
        .collect();
    if fives.len() != 4 {
        return false;
    }
    let x = fives[0];
    let powers: Vec<Permutation> = (1..5).map(|k| x.pow(k)).collect();
    let mut induced = std::collections::BTreeSet::new();
    for g in elements {
        let c = x.conjugate_by(g);
        match powers.iter().position(|p| *p == c) {
            Some(k) => {
                induced.insert(k);
            }
            None => return false,
        }
    }
    induced.len() == 4
}

fn center_order(elements: &[Permutation], generators: &[Permutation]) -> usize {
    elements
        .iter()
        .filter(|e| generators.iter().all(|g| e.commutes_with(g)))
        .count()
}

fn derived_generators(degree: usize, generators: &[Permutation]) -> Vec<Permutation> {
    let elements = closure(degree, generators, MAX_RECOGNIZED_ORDER as usize).unwrap_or_default();
    let mut comms: Vec<Permutation> = Vec::new();
    for a in generators {
        for b in generators {
            let c = a.inverse().then(&b.inverse()).then(a).then(b);
            if !c.is_identity() && !comms.contains(&c) {
                comms.push(c);
            }
        }
    }
    // normal closure: conjugates of the commutators by all elements
    let mut gens: Vec<Permutation> = Vec::new();
    for c in &comms {
        for e in &elements {
            let d = c.conjugate_by(e);
            if !gens.contains(&d) {
                gens.push(d);
            }
        }
    }
    gens
}

fn derived_subgroup_order(degree: usize, generators: &[Permutation]) -> usize {
    let gens = derived_generators(degree, generators);
    closure(degree, &gens, MAX_RECOGNIZED_ORDER as usize)
        .map(|e| e.len())
        .unwrap_or(usize::MAX)
}
