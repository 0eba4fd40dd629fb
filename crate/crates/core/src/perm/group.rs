use std::collections::VecDeque;
use std::sync::OnceLock;

use rustc_hash::FxHashSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{Permutation, StabilizerChain};

/// A permutation group given by generators, with a lazily built stabilizer chain.
#[derive(Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    chain: OnceLock<StabilizerChain>,
}

impl std::fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PermGroup")
            .field("degree", &self.degree)
            .field("generators", &self.generators)
            .finish()
    }
}

impl PermGroup {
    /// Identity generators are dropped unless nothing else remains.
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        if degree == 0 {
            return Err(Error::InvalidArgument("degree must be at least 1".into()));
        }
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    left: degree,
                    right: g.degree(),
                });
            }
        }
        let mut gens: Vec<Permutation> = Vec::with_capacity(generators.len());
        for g in generators {
            if !g.is_identity() && !gens.contains(&g) {
                gens.push(g);
            }
        }
        if gens.is_empty() {
            gens.push(Permutation::identity(degree));
        }
        Ok(PermGroup {
            degree,
            generators: gens,
            chain: OnceLock::new(),
        })
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup::new(degree, Vec::new()).expect("degree >= 1")
    }

    pub(crate) fn with_chain(degree: usize, generators: Vec<Permutation>, chain: StabilizerChain) -> Self {
        let g = PermGroup::new(degree, generators).expect("validated by caller");
        let _ = g.chain.set(chain);
        g
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// Non-identity generators.
    pub fn nontrivial_generators(&self) -> impl Iterator<Item = &Permutation> {
        self.generators.iter().filter(|g| !g.is_identity())
    }

    pub fn chain(&self) -> &StabilizerChain {
        self.chain
            .get_or_init(|| StabilizerChain::build(self.degree, &self.generators, &[]))
    }

    pub fn build_chain(&self) -> StabilizerChain {
        self.chain().clone()
    }

    pub fn order(&self) -> u128 {
        self.chain().order()
    }

    pub fn is_trivial(&self) -> bool {
        self.generators.iter().all(|g| g.is_identity())
    }

    pub fn contains(&self, p: &Permutation) -> Result<bool> {
        if p.degree() != self.degree {
            return Err(Error::DegreeMismatch {
                left: self.degree,
                right: p.degree(),
            });
        }
        Ok(self.chain().contains(p))
    }

    fn check_point(&self, point: usize) -> Result<()> {
        if point >= self.degree {
            return Err(Error::PointOutOfRange {
                point,
                degree: self.degree,
            });
        }
        Ok(())
    }

    /// Sorted orbit of `point`.
    pub fn orbit(&self, point: usize) -> Result<Vec<u32>> {
        self.check_point(point)?;
        let mut seen = vec![false; self.degree];
        let mut out = vec![point as u32];
        seen[point] = true;
        let mut queue = VecDeque::from([point as u32]);
        while let Some(x) = queue.pop_front() {
            for g in &self.generators {
                let y = g.image(x);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    out.push(y);
                    queue.push_back(y);
                }
            }
        }
        out.sort_unstable();
        Ok(out)
    }

    /// All orbits, each sorted, ordered by smallest point.
    pub fn orbits(&self) -> Vec<Vec<u32>> {
        orbits_of(self.degree, &self.generators)
    }

    pub fn is_transitive(&self) -> bool {
        self.orbit(0).map(|o| o.len() == self.degree).unwrap_or(false)
    }

    /// Full stabilizer of `point`, with its chain attached.
    pub fn point_stabilizer(&self, point: usize) -> Result<PermGroup> {
        self.check_point(point)?;
        let chain = StabilizerChain::build(self.degree, &self.generators, &[point as u32]);
        let tail = match chain.levels().first() {
            Some(l) if l.base_point == point as u32 => chain.tail(1),
            _ => chain,
        };
        let gens = tail.strong_generators();
        Ok(PermGroup::with_chain(self.degree, gens, tail))
    }

    /// Pointwise stabilizer of a sequence of points.
    pub fn pointwise_stabilizer(&self, points: &[u32]) -> Result<PermGroup> {
        for &p in points {
            self.check_point(p as usize)?;
        }
        let chain = StabilizerChain::build(self.degree, &self.generators, points);
        let depth = chain
            .levels()
            .iter()
            .zip(points)
            .take_while(|(l, &p)| l.base_point == p)
            .count();
        let tail = chain.tail(depth);
        let gens = tail.strong_generators();
        Ok(PermGroup::with_chain(self.degree, gens, tail))
    }

    /// Every nonidentity element is fixed-point-free.
    pub fn is_semiregular(&self) -> bool {
        let order = self.order();
        self.orbits().iter().all(|o| o.len() as u128 == order)
    }

    pub fn is_abelian(&self) -> bool {
        let g = &self.generators;
        g.iter()
            .enumerate()
            .all(|(i, a)| g[i + 1..].iter().all(|b| a.commutes_with(b)))
    }

    /// All elements; fails when the order exceeds `cap`.
    pub fn elements(&self, cap: usize) -> Result<Vec<Permutation>> {
        let order = self.order();
        if order > cap as u128 {
            return Err(Error::Unsupported(format!(
                "element listing of a group of order {order} (cap {cap})"
            )));
        }
        let mut out = Vec::with_capacity(order as usize);
        self.chain().for_each_element(|g| out.push(g.clone()));
        Ok(out)
    }

    pub fn random_element<R: rand::Rng>(&self, rng: &mut R) -> Permutation {
        self.chain().random_element(rng)
    }

    /// Subgroup generated by `self`'s generators and `extra`.
    pub fn join(&self, extra: &[Permutation]) -> Result<PermGroup> {
        let mut gens = self.generators.clone();
        gens.extend(extra.iter().cloned());
        PermGroup::new(self.degree, gens)
    }

    pub fn conjugate_by(&self, g: &Permutation) -> PermGroup {
        let gens = self.generators.iter().map(|x| x.conjugate_by(g)).collect();
        PermGroup::new(self.degree, gens).expect("same degree")
    }

    /// Is every generator of `other` in `self`?
    pub fn contains_group(&self, other: &PermGroup) -> Result<bool> {
        for g in other.generators() {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Smallest normal subgroup of `self` containing `of`.
    pub fn normal_closure(&self, of: &[Permutation]) -> Result<PermGroup> {
        for p in of {
            if !self.contains(p)? {
                return Err(Error::NotASubgroup(format!("{p} is not in the group")));
            }
        }
        let full = self.order();
        let mut gens: Vec<Permutation> = of.to_vec();
        let mut n = PermGroup::new(self.degree, gens.clone())?;
        let mut head = 0;
        while head < gens.len() && n.order() < full {
            let x = gens[head].clone();
            for g in &self.generators {
                let c = x.conjugate_by(g);
                if !n.chain().contains(&c) {
                    gens.push(c);
                    n = PermGroup::new(self.degree, gens.clone())?;
                }
            }
            head += 1;
        }
        Ok(n)
    }

    /// Is `self` normalized by every generator of `by`?
    pub fn is_normalized_by(&self, by: &[Permutation]) -> bool {
        by.iter().all(|g| {
            self.generators
                .iter()
                .all(|x| self.chain().contains(&x.conjugate_by(g)))
        })
    }
}

pub(crate) fn orbits_of(degree: usize, generators: &[Permutation]) -> Vec<Vec<u32>> {
    let mut seen = vec![false; degree];
    let mut out = Vec::new();
    for start in 0..degree {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut orbit = vec![start as u32];
        let mut head = 0;
        while head < orbit.len() {
            let x = orbit[head];
            for g in generators {
                let y = g.image(x);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    orbit.push(y);
                }
            }
            head += 1;
        }
        orbit.sort_unstable();
        out.push(orbit);
    }
    out
}

/// Naive closure of a generating set by breadth-first multiplication.
/// Returns `None` as soon as more than `cap` elements have been found.
pub fn closure(degree: usize, generators: &[Permutation], cap: usize) -> Option<Vec<Permutation>> {
    let id = Permutation::identity(degree);
    let mut seen: FxHashSet<Permutation> = FxHashSet::default();
    seen.insert(id.clone());
    let mut out = vec![id];
    let mut head = 0;
    while head < out.len() {
        for g in generators {
            let h = out[head].then(g);
            if !seen.contains(&h) {
                if out.len() == cap {
                    return None;
                }
                seen.insert(h.clone());
                out.push(h);
            }
        }
        head += 1;
    }
    Some(out)
}

#[derive(Serialize, Deserialize)]
struct GroupRepr {
    degree: usize,
    generators: Vec<Vec<u32>>,
}

impl Serialize for PermGroup {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GroupRepr {
            degree: self.degree,
            generators: self.generators.iter().map(|g| g.images().to_vec()).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for PermGroup {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = GroupRepr::deserialize(d)?;
        let gens = repr
            .generators
            .into_iter()
            .map(Permutation::from_images)
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        PermGroup::new(repr.degree, gens).map_err(serde::de::Error::custom)
    }
}
