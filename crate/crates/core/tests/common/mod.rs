//! Independent oracles shared by the integration targets. Everything here
//! works on explicit element lists and never touches stabilizer chains.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap, HashSet};

use orbitale::perm::{closure, PermGroup, Permutation};
use orbitale::zoo::{alternating, cyclic, dihedral, direct_product, direct_with_z2, pgl2, psl2, symmetric};

/// Multiplication table of a small group, built by naive closure.
pub struct Table {
    pub elems: Vec<Permutation>,
    pub index: HashMap<Permutation, usize>,
    pub mul: Vec<u32>,
    pub inv: Vec<u32>,
}

impl Table {
    pub fn new(group: &PermGroup, cap: usize) -> Option<Table> {
        let elems = closure(group.degree(), group.generators(), cap)?;
        let index: HashMap<Permutation, usize> = elems.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let n = elems.len();
        let mut mul = vec![0u32; n * n];
        for (i, a) in elems.iter().enumerate() {
            for (j, b) in elems.iter().enumerate() {
                mul[i * n + j] = index[&a.then(b)] as u32;
            }
        }
        let inv = elems.iter().map(|a| index[&a.inverse()] as u32).collect();
        Some(Table { elems, index, mul, inv })
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[a as usize * self.len() + b as usize]
    }

    /// Sorted element indices of the subgroup generated by `gens`, or `None`
    /// once it exceeds `cap` elements.
    pub fn generate(&self, gens: &[u32], cap: usize) -> Option<Vec<u32>> {
        let id = self.index[&self.elems[0]] as u32;
        let mut seen = vec![false; self.len()];
        seen[id as usize] = true;
        let mut out = vec![id];
        let mut head = 0;
        while head < out.len() {
            for &g in gens {
                let h = self.mul(out[head], g);
                if !seen[h as usize] {
                    if out.len() == cap {
                        return None;
                    }
                    seen[h as usize] = true;
                    out.push(h);
                }
            }
            head += 1;
        }
        out.sort_unstable();
        Some(out)
    }

    /// Every subgroup of order at most `cap`, as sorted index lists, built as
    /// iterated joins of cyclic subgroups.
    pub fn subgroups_up_to(&self, cap: usize) -> Vec<Vec<u32>> {
        let cyclics: BTreeSet<Vec<u32>> = (0..self.len() as u32)
            .filter_map(|g| self.generate(&[g], cap))
            .collect();
        let cyclic_gens: Vec<u32> = cyclics
            .iter()
            .map(|c| {
                *c.iter()
                    .find(|&&g| self.generate(&[g], cap).as_ref() == Some(c))
                    .expect("cyclic subgroup has a generator")
            })
            .collect();
        let mut found: HashSet<Vec<u32>> = cyclics.iter().cloned().collect();
        let mut queue: Vec<Vec<u32>> = cyclics.into_iter().collect();
        while let Some(sub) = queue.pop() {
            for &c in &cyclic_gens {
                if sub.binary_search(&c).is_ok() {
                    continue;
                }
                let mut gens = sub.clone();
                gens.push(c);
                if let Some(j) = self.generate(&gens, cap) {
                    if found.insert(j.clone()) {
                        queue.push(j);
                    }
                }
            }
        }
        let mut all: Vec<Vec<u32>> = found.into_iter().collect();
        all.sort();
        all
    }

    /// Smallest conjugate of `sub`, a class key.
    pub fn class_key(&self, sub: &[u32]) -> Vec<u32> {
        (0..self.len() as u32)
            .map(|g| {
                let gi = self.inv[g as usize];
                let mut c: Vec<u32> = sub.iter().map(|&h| self.mul(self.mul(gi, h), g)).collect();
                c.sort_unstable();
                c
            })
            .min()
            .expect("group is not empty")
    }

    pub fn indices_of(&self, group: &PermGroup, cap: usize) -> Vec<u32> {
        let mut v: Vec<u32> = closure(group.degree(), group.generators(), cap)
            .expect("subgroup within cap")
            .iter()
            .map(|p| self.index[p] as u32)
            .collect();
        v.sort_unstable();
        v
    }
}

/// Groups of order at most 1000 with order divisible by 5.
pub fn small_corpus() -> Vec<(&'static str, PermGroup)> {
    let f20 = PermGroup::new(
        5,
        vec![
            Permutation::from_cycles(5, &[&[0, 1, 2, 3, 4]]).unwrap(),
            Permutation::from_cycles(5, &[&[1, 2, 4, 3]]).unwrap(),
        ],
    )
    .unwrap();
    vec![
        ("Z5", cyclic(5).unwrap()),
        ("D10", dihedral(5).unwrap()),
        ("D20", dihedral(10).unwrap()),
        ("F20", f20),
        ("A5", alternating(5).unwrap()),
        ("S5", symmetric(5).unwrap()),
        ("PGL(2,5)", pgl2(5).unwrap()),
        ("A5xZ2", direct_with_z2(&alternating(5).unwrap()).unwrap()),
        ("A6", psl2(9).unwrap()),
        ("A5xD10", direct_product(&alternating(5).unwrap(), &dihedral(5).unwrap()).unwrap()),
        ("PSL(2,11)", psl2(11).unwrap()),
    ]
}

/// Order of the automorphism group by exhaustive search over all bijections.
pub fn brute_force_aut_order(adj: &[Vec<bool>]) -> u128 {
    fn rec(adj: &[Vec<bool>], map: &mut Vec<usize>, used: &mut Vec<bool>) -> u128 {
        let k = map.len();
        if k == adj.len() {
            return 1;
        }
        let mut total = 0;
        for c in 0..adj.len() {
            if used[c] || (0..k).any(|j| adj[k][j] != adj[c][map[j]]) {
                continue;
            }
            used[c] = true;
            map.push(c);
            total += rec(adj, map, used);
            map.pop();
            used[c] = false;
        }
        total
    }
    rec(adj, &mut Vec::new(), &mut vec![false; adj.len()])
}
