use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rustc_hash::{FxHashMap, FxHashSet};

use crate::error::{Error, Result};
use crate::perm::{PermGroup, Permutation};

/// Largest subgroup order the search supports.
pub const MAX_SEARCH_ORDER: u128 = 120;

const SYLOW_ATTEMPTS: usize = 200_000;

/// A Sylow 5-subgroup of `group`, returned as its element list.
///
/// Only 5-parts up to 25 are supported; the subgroup is found by sampling
/// uniformly random elements with a seeded generator.
pub fn sylow5_subgroup(group: &PermGroup, seed: u64) -> Result<Vec<Permutation>> {
    let order = group.order();
    let mut five_part = 1u128;
    while order.is_multiple_of(five_part * 5) {
        five_part *= 5;
    }
    if five_part == 1 {
        return Err(Error::InvalidArgument("group order is prime to 5".into()));
    }
    if five_part > 25 {
        return Err(Error::Unsupported(format!(
            "Sylow 5-subgroup of order {five_part}"
        )));
    }
    let degree = group.degree();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut first: Option<Permutation> = None;
    for _ in 0..SYLOW_ATTEMPTS {
        let g = group.random_element(&mut rng);
        let o = g.order();
        if !o.is_multiple_of(5) {
            continue;
        }
        let mut e = 1u64;
        while o.is_multiple_of(e * 5) {
            e *= 5;
        }
        let y = g.pow((o / e) as i64);
        if e as u128 == five_part {
            return Ok(super::closure(degree, &[y], 25).expect("cyclic of order <= 25"));
        }
        match &first {
            None => first = Some(y),
            Some(x) => {
                if y.commutes_with(x) {
                    let p = super::closure(degree, &[x.clone(), y], 25).expect("order <= 25");
                    if p.len() as u128 == five_part {
                        return Ok(p);
                    }
                }
            }
        }
        if five_part == 5 {
            if let Some(x) = first.take() {
                return Ok(super::closure(degree, &[x], 5).expect("order 5"));
            }
        }
    }
    Err(Error::Internal("no Sylow 5-subgroup found by sampling".into()))
}

/// Generators of the order-5 subgroups of a 5-group of order 5 or 25.
fn order5_subgroups(p: &[Permutation]) -> Vec<Permutation> {
    let mut seen: FxHashSet<Permutation> = FxHashSet::default();
    let mut out = Vec::new();
    for x in p {
        if x.is_identity() || x.order() != 5 || seen.contains(x) {
            continue;
        }
        for k in 1..5 {
            seen.insert(x.pow(k));
        }
        out.push(x.clone());
    }
    out
}

/// Subgroups of order `m` containing an element of order 5, complete up to
/// conjugacy in `group`. Conjugate duplicates may occur.
pub fn find_subgroups_of_order(group: &PermGroup, m: u128, seed: u64) -> Result<Vec<PermGroup>> {
    let order = group.order();
    if m == 0 || !order.is_multiple_of(m) {
        return Err(Error::InvalidArgument(format!(
            "{m} does not divide the group order {order}"
        )));
    }
    if !m.is_multiple_of(5) {
        return Err(Error::InvalidArgument(format!("{m} is not a multiple of 5")));
    }
    if m > MAX_SEARCH_ORDER {
        return Err(Error::Unsupported(format!(
            "subgroup search for order {m} > {MAX_SEARCH_ORDER}"
        )));
    }
    let sylow = sylow5_subgroup(group, seed)?;
    let mut out = Vec::new();
    for a in order5_subgroups(&sylow) {
        out.extend(AnchoredSearch::new(group, a, m as usize).run());
    }
    Ok(out)
}

/// Element-set fingerprint of a subgroup.
fn set_key(elements: &[Permutation]) -> u64 {
    let mut fps: Vec<u64> = elements.iter().map(|e| e.fingerprint()).collect();
    fps.sort_unstable();
    let mut h: u64 = 0x9e37_79b9_7f4a_7c15;
    for f in fps {
        h = (h ^ f).wrapping_mul(0x0000_0100_0000_01b3).rotate_left(17);
    }
    h
}

struct Candidate {
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
    members: FxHashSet<Permutation>,
}

/// Growth search for subgroups of order `m` that contain the anchor `<a>`.
struct AnchoredSearch<'g> {
    group: &'g PermGroup,
    anchor: Permutation,
    anchor_powers: Vec<Permutation>,
    m: usize,
    pool: Vec<Permutation>,
    normalizer: Vec<Permutation>,
}

impl<'g> AnchoredSearch<'g> {
    fn new(group: &'g PermGroup, anchor: Permutation, m: usize) -> Self {
        let anchor_powers: Vec<Permutation> = (0..5).map(|k| anchor.pow(k)).collect();
        let mut pool = Vec::new();
        let mut normalizer = Vec::new();
        let m64 = m as u64;
        group.chain().for_each_element(|g| {
            let conj = anchor.conjugate_by(g);
            if anchor_powers[1..].contains(&conj) {
                normalizer.push(g.clone());
            }
            if anchor_powers.contains(g) || !m64.is_multiple_of(g.order()) {
                return;
            }
            if anchor_powers[1..]
                .iter()
                .all(|ak| m64.is_multiple_of(ak.order_of_product(g)))
            {
                pool.push(g.clone());
            }
        });
        AnchoredSearch {
            group,
            anchor,
            anchor_powers,
            m,
            pool,
            normalizer,
        }
    }

    /// Smallest element-set key over all conjugates by the anchor normalizer.
    fn class_key(&self, elements: &[Permutation]) -> u64 {
        self.normalizer
            .iter()
            .map(|n| {
                let conj: Vec<Permutation> = elements.iter().map(|e| e.conjugate_by(n)).collect();
                set_key(&conj)
            })
            .min()
            .unwrap_or_else(|| set_key(elements))
    }

    fn close(&self, base: &Candidate, y: &Permutation) -> Option<Candidate> {
        let mut members = base.members.clone();
        let mut elements = base.elements.clone();
        let mut generators = base.generators.clone();
        generators.push(y.clone());
        let mut head = 0;
        while head < elements.len() {
            for g in &generators {
                let h = elements[head].then(g);
                if !members.contains(&h) {
                    if elements.len() == self.m {
                        return None;
                    }
                    members.insert(h.clone());
                    elements.push(h);
                }
            }
            head += 1;
        }
        if !self.m.is_multiple_of(elements.len()) {
            return None;
        }
        Some(Candidate {
            generators,
            elements,
            members,
        })
    }

    fn run(&self) -> Vec<PermGroup> {
        let degree = self.group.degree();
        let m64 = self.m as u64;
        let start = Candidate {
            generators: vec![self.anchor.clone()],
            elements: self.anchor_powers.clone(),
            members: self.anchor_powers.iter().cloned().collect(),
        };
        let mut seen_classes: FxHashMap<u64, ()> = FxHashMap::default();
        seen_classes.insert(self.class_key(&start.elements), ());
        let mut results = Vec::new();
        if self.m == 5 {
            results.push(PermGroup::new(degree, start.generators).expect("same degree"));
            return results;
        }
        let mut frontier = vec![start];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for k in &frontier {
                // y and k*y^j (k in K, j prime to o(y)) generate the same join with K
                let mut covered: FxHashSet<u64> = FxHashSet::default();
                for y in &self.pool {
                    if k.members.contains(y) || covered.contains(&y.fingerprint()) {
                        continue;
                    }
                    if !k.generators[1..]
                        .iter()
                        .all(|g| m64.is_multiple_of(g.order_of_product(y)))
                    {
                        continue;
                    }
                    let oy = y.order() as i64;
                    for j in (1..oy).filter(|&j| super::gcd(j as u64, oy as u64) == 1) {
                        let yj = y.pow(j);
                        for e in &k.elements {
                            covered.insert(e.then(&yj).fingerprint());
                        }
                    }
                    let Some(cand) = self.close(k, y) else { continue };
                    let key = self.class_key(&cand.elements);
                    if seen_classes.insert(key, ()).is_some() {
                        continue;
                    }
                    if cand.elements.len() == self.m {
                        results.push(
                            PermGroup::new(degree, cand.generators.clone()).expect("same degree"),
                        );
                    } else {
                        next.push(cand);
                    }
                }
            }
            frontier = next;
        }
        results
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a5() -> PermGroup {
        PermGroup::new(
            5,
            vec![
                Permutation::from_cycles(5, &[&[0, 1, 2]]).unwrap(),
                Permutation::from_cycles(5, &[&[0, 1, 2, 3, 4]]).unwrap(),
            ],
        )
        .unwrap()
    }

    #[test]
    fn a5_has_one_class_of_d10_and_of_z5() {
        let g = a5();
        let d10 = find_subgroups_of_order(&g, 10, 0).unwrap();
        assert_eq!(d10.len(), 1);
        assert_eq!(d10[0].order(), 10);
        let z5 = find_subgroups_of_order(&g, 5, 0).unwrap();
        assert_eq!(z5.len(), 1);
        assert_eq!(z5[0].order(), 5);
    }

    #[test]
    fn rejects_bad_orders() {
        let g = a5();
        assert!(matches!(find_subgroups_of_order(&g, 7, 0), Err(Error::InvalidArgument(_))));
        assert!(matches!(find_subgroups_of_order(&g, 4, 0), Err(Error::InvalidArgument(_))));
        let s = PermGroup::new(
            7,
            vec![
                Permutation::from_cycles(7, &[&[0, 1]]).unwrap(),
                Permutation::from_cycles(7, &[&[0, 1, 2, 3, 4, 5, 6]]).unwrap(),
            ],
        )
        .unwrap();
        assert!(matches!(find_subgroups_of_order(&s, 840, 0), Err(Error::Unsupported(_))));
    }

    #[test]
    fn search_is_seed_stable() {
        let g = a5();
        let a: Vec<_> = find_subgroups_of_order(&g, 10, 3)
            .unwrap()
            .into_iter()
            .map(|h| h.generators().to_vec())
            .collect();
        let b: Vec<_> = find_subgroups_of_order(&g, 10, 3)
            .unwrap()
            .into_iter()
            .map(|h| h.generators().to_vec())
            .collect();
        assert_eq!(a, b);
    }
}
