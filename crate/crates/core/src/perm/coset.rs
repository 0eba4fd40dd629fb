use rustc_hash::FxHashMap;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::perm::{fingerprint_images, orbits_of, PermGroup, Permutation};

/// Default upper bound on the number of cosets an action may have.
pub const DEFAULT_INDEX_CEILING: u128 = 1_000_000;

/// Action of a group on the right cosets of a subgroup.
///
/// Coset `i` is `H * transversal[i]`; coset 0 is `H` itself. A coset is looked
/// up through a fingerprint of how its representatives move the `H`-orbits of
/// the underlying points, with ties settled exactly by `r * s^-1 in H`.
pub struct CosetAction {
    parent: PermGroup,
    stabilizer: PermGroup,
    action_generators: Vec<Permutation>,
    stabilizer_images: Vec<Permutation>,
    transversal: Vec<Permutation>,
    transversal_inv: Vec<Permutation>,
    orbit_labels: Vec<u32>,
    buckets: FxHashMap<u64, Vec<u32>>,
}

/// An orbit of the subgroup on the cosets.
#[derive(Clone, Debug, Serialize)]
pub struct Suborbit {
    pub points: Vec<u32>,
    pub length: usize,
    pub paired_with: usize,
    pub self_paired: bool,
}

impl CosetAction {
    pub fn new(group: &PermGroup, sub: &PermGroup) -> Result<Self> {
        Self::with_ceiling(group, sub, DEFAULT_INDEX_CEILING)
    }

    pub fn with_ceiling(group: &PermGroup, sub: &PermGroup, ceiling: u128) -> Result<Self> {
        if group.degree() != sub.degree() {
            return Err(Error::DegreeMismatch {
                left: group.degree(),
                right: sub.degree(),
            });
        }
        for h in sub.generators() {
            if !group.contains(h)? {
                return Err(Error::NotASubgroup(format!(
                    "generator {h} is not in the group"
                )));
            }
        }
        let index = group.order() / sub.order();
        if index > ceiling {
            return Err(Error::IndexTooLarge { index, ceiling });
        }
        let degree = sub.degree();
        let mut orbit_labels = vec![0u32; degree];
        for (i, orbit) in sub.orbits().iter().enumerate() {
            for &x in orbit {
                orbit_labels[x as usize] = i as u32;
            }
        }
        let mut action = CosetAction {
            parent: group.clone(),
            stabilizer: sub.clone(),
            action_generators: Vec::new(),
            stabilizer_images: Vec::new(),
            transversal: Vec::new(),
            transversal_inv: Vec::new(),
            orbit_labels,
            buckets: FxHashMap::default(),
        };
        action.push_coset(Permutation::identity(degree));
        let gens: Vec<Permutation> = group.generators().to_vec();
        let mut images: Vec<Vec<u32>> = vec![Vec::with_capacity(index as usize); gens.len()];
        let mut head = 0;
        while head < action.transversal.len() {
            for (i, s) in gens.iter().enumerate() {
                let g = action.transversal[head].then(s);
                let target = match action.lookup(&g) {
                    Some(c) => c,
                    None => {
                        if action.transversal.len() as u128 >= index {
                            return Err(Error::Internal(
                                "coset enumeration exceeded the index".into(),
                            ));
                        }
                        action.push_coset(g)
                    }
                };
                images[i].push(target as u32);
            }
            head += 1;
        }
        if action.transversal.len() as u128 != index {
            return Err(Error::Internal(format!(
                "found {} cosets, expected {index}",
                action.transversal.len()
            )));
        }
        action.action_generators = images
            .into_iter()
            .map(Permutation::from_images)
            .collect::<Result<Vec<_>>>()?;
        let stab_images = sub
            .generators()
            .iter()
            .map(|h| action.image_of(h))
            .collect::<Result<Vec<_>>>()?;
        action.stabilizer_images = stab_images;
        Ok(action)
    }

    fn key(&self, g: &Permutation) -> u64 {
        let mut key = vec![0u32; g.degree()];
        for (x, &label) in self.orbit_labels.iter().enumerate() {
            key[g.image(x as u32) as usize] = label;
        }
        fingerprint_images(&key)
    }

    fn push_coset(&mut self, rep: Permutation) -> usize {
        let id = self.transversal.len();
        let key = self.key(&rep);
        self.buckets.entry(key).or_default().push(id as u32);
        self.transversal_inv.push(rep.inverse());
        self.transversal.push(rep);
        id
    }

    /// Index of the coset `H g`, if it has been enumerated.
    pub fn lookup(&self, g: &Permutation) -> Option<usize> {
        let bucket = self.buckets.get(&self.key(g))?;
        let chain = self.stabilizer.chain();
        bucket
            .iter()
            .map(|&c| c as usize)
            .find(|&c| chain.contains(&g.then(&self.transversal_inv[c])))
    }

    /// Permutation induced on cosets by an element of the parent group.
    pub fn image_of(&self, g: &Permutation) -> Result<Permutation> {
        if g.degree() != self.parent.degree() {
            return Err(Error::DegreeMismatch {
                left: self.parent.degree(),
                right: g.degree(),
            });
        }
        let images = self
            .transversal
            .iter()
            .map(|r| {
                self.lookup(&r.then(g))
                    .map(|c| c as u32)
                    .ok_or_else(|| Error::NotASubgroup(format!("{g} is not in the parent group")))
            })
            .collect::<Result<Vec<_>>>()?;
        Permutation::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.transversal.len()
    }

    pub fn parent(&self) -> &PermGroup {
        &self.parent
    }

    pub fn stabilizer(&self) -> &PermGroup {
        &self.stabilizer
    }

    /// Images of the parent's generators on the cosets.
    pub fn action_generators(&self) -> &[Permutation] {
        &self.action_generators
    }

    /// Images of the subgroup's generators; they fix coset 0.
    pub fn stabilizer_images(&self) -> &[Permutation] {
        &self.stabilizer_images
    }

    pub fn representative(&self, coset: usize) -> &Permutation {
        &self.transversal[coset]
    }

    pub fn transversal(&self) -> &[Permutation] {
        &self.transversal
    }

    /// The action image as a permutation group on the cosets.
    pub fn image_group(&self) -> PermGroup {
        PermGroup::new(self.degree(), self.action_generators.clone()).expect("same degree")
    }

    /// Order of the subgroup's image, by enumeration of the image.
    pub fn stabilizer_image_order(&self) -> u128 {
        let cap = self.stabilizer.order() as usize;
        super::closure(self.degree(), &self.stabilizer_images, cap)
            .map(|e| e.len() as u128)
            .unwrap_or(cap as u128)
    }

    /// Order of the kernel of the action (the core of the subgroup).
    pub fn kernel_order(&self) -> u128 {
        self.stabilizer.order() / self.stabilizer_image_order()
    }

    /// Order of the action image: degree times the image of the subgroup.
    pub fn image_order(&self) -> u128 {
        self.degree() as u128 * self.stabilizer_image_order()
    }

    /// `H`-orbits on the cosets, ordered by smallest member, with pairing.
    pub fn suborbits(&self) -> Vec<Suborbit> {
        let orbits = orbits_of(self.degree(), &self.stabilizer_images);
        let mut which = vec![0usize; self.degree()];
        for (i, o) in orbits.iter().enumerate() {
            for &x in o {
                which[x as usize] = i;
            }
        }
        orbits
            .iter()
            .enumerate()
            .map(|(i, o)| {
                let rep = o[0] as usize;
                let inv = self
                    .lookup(&self.transversal_inv[rep])
                    .expect("inverse of a parent element lies in a coset");
                let paired = which[inv];
                Suborbit {
                    points: o.clone(),
                    length: o.len(),
                    paired_with: paired,
                    self_paired: paired == i,
                }
            })
            .collect()
    }
}
