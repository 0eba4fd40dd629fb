use crate::perm::Permutation;

const ABSENT: u32 = u32::MAX;

/// One level of a stabilizer chain: the basic orbit of `base_point` under the
/// strong generators that fix all earlier base points, with a transversal.
#[derive(Clone, Debug)]
pub struct ChainLevel {
    pub base_point: u32,
    pub generators: Vec<Permutation>,
    orbit: Vec<u32>,
    slot: Vec<u32>,
    reps: Vec<Permutation>,
    inv_reps: Vec<Permutation>,
}

impl ChainLevel {
    fn new(degree: usize, base_point: u32) -> Self {
        let mut level = ChainLevel {
            base_point,
            generators: Vec::new(),
            orbit: Vec::new(),
            slot: vec![ABSENT; degree],
            reps: Vec::new(),
            inv_reps: Vec::new(),
        };
        level.rebuild(degree);
        level
    }

    fn rebuild(&mut self, degree: usize) {
        self.slot.iter_mut().for_each(|s| *s = ABSENT);
        self.orbit.clear();
        self.reps.clear();
        self.inv_reps.clear();
        self.orbit.push(self.base_point);
        self.slot[self.base_point as usize] = 0;
        self.reps.push(Permutation::identity(degree));
        let mut head = 0;
        while head < self.orbit.len() {
            let x = self.orbit[head];
            for s in &self.generators {
                let y = s.image(x);
                if self.slot[y as usize] == ABSENT {
                    self.slot[y as usize] = self.orbit.len() as u32;
                    self.orbit.push(y);
                    let rep = self.reps[head].then(s);
                    self.reps.push(rep);
                }
            }
            head += 1;
        }
        self.inv_reps = self.reps.iter().map(|r| r.inverse()).collect();
    }

    pub fn orbit(&self) -> &[u32] {
        &self.orbit
    }

    pub fn orbit_len(&self) -> usize {
        self.orbit.len()
    }

    pub fn contains_point(&self, x: u32) -> bool {
        self.slot[x as usize] != ABSENT
    }

    /// Transversal element mapping the base point to `x`, if `x` is in the orbit.
    pub fn representative(&self, x: u32) -> Option<&Permutation> {
        match self.slot[x as usize] {
            ABSENT => None,
            s => Some(&self.reps[s as usize]),
        }
    }

    pub fn representatives(&self) -> &[Permutation] {
        &self.reps
    }

    fn inverse_representative(&self, x: u32) -> Option<&Permutation> {
        match self.slot[x as usize] {
            ABSENT => None,
            s => Some(&self.inv_reps[s as usize]),
        }
    }
}

/// Base and strong generating set with per-level orbit transversals.
#[derive(Clone, Debug)]
pub struct StabilizerChain {
    degree: usize,
    levels: Vec<ChainLevel>,
}

impl StabilizerChain {
    /// Deterministic Schreier–Sims. The base starts with `base_prefix`; further
    /// base points are the smallest points moved by the element that needs them.
    pub fn build(degree: usize, generators: &[Permutation], base_prefix: &[u32]) -> Self {
        let gens: Vec<Permutation> = generators
            .iter()
            .filter(|g| !g.is_identity())
            .cloned()
            .collect();
        let mut chain = StabilizerChain {
            degree,
            levels: Vec::new(),
        };
        for &b in base_prefix {
            chain.levels.push(ChainLevel::new(degree, b));
        }
        for g in &gens {
            if chain.levels.iter().all(|l| g.fixes(l.base_point)) {
                let b = g.smallest_moved_point().expect("non-identity");
                chain.levels.push(ChainLevel::new(degree, b));
            }
        }
        for g in &gens {
            chain.insert_strong_generator(g.clone(), 0);
        }
        chain.complete();
        chain
    }

    /// Adds `g` as a strong generator on levels `from..` that it fixes the
    /// earlier base points of, extending the base when `g` fixes all of it.
    fn insert_strong_generator(&mut self, g: Permutation, from: usize) {
        let mut depth = from;
        loop {
            if depth == self.levels.len() {
                let b = g.smallest_moved_point().expect("non-identity residue");
                self.levels.push(ChainLevel::new(self.degree, b));
            }
            self.levels[depth].generators.push(g.clone());
            self.levels[depth].rebuild(self.degree);
            if !g.fixes(self.levels[depth].base_point) {
                break;
            }
            depth += 1;
        }
    }

    fn complete(&mut self) {
        let mut i = self.levels.len() as isize - 1;
        while i >= 0 {
            let level = i as usize;
            match self.find_nontrivial_schreier_residue(level) {
                Some((residue, drop)) => {
                    // residue fixes base points 0..drop; it belongs to levels level+1..=drop
                    let mut depth = level + 1;
                    while depth <= drop {
                        if depth == self.levels.len() {
                            let b = residue.smallest_moved_point().expect("non-identity");
                            self.levels.push(ChainLevel::new(self.degree, b));
                        }
                        self.levels[depth].generators.push(residue.clone());
                        self.levels[depth].rebuild(self.degree);
                        depth += 1;
                    }
                    i = drop as isize;
                }
                None => i -= 1,
            }
        }
        while self
            .levels
            .last()
            .is_some_and(|l| l.orbit_len() == 1 && l.generators.is_empty())
        {
            self.levels.pop();
        }
    }

    fn find_nontrivial_schreier_residue(&self, level: usize) -> Option<(Permutation, usize)> {
        let lv = &self.levels[level];
        let mut scratch = Permutation::identity(self.degree);
        for (j, &beta) in lv.orbit.iter().enumerate() {
            for s in &lv.generators {
                let target = s.image(beta);
                let u_target_inv = lv.inverse_representative(target).expect("orbit closed");
                lv.reps[j].then_into(s, &mut scratch);
                if scratch == lv.reps[lv.slot[target as usize] as usize] {
                    continue;
                }
                let h = scratch.then(u_target_inv);
                let (residue, drop) = self.sift_from(h, level + 1);
                if !residue.is_identity() {
                    return Some((residue, drop));
                }
            }
        }
        None
    }

    /// Sifts `g` starting at level `from`; returns the residue and the level
    /// at which it dropped out (`levels.len()` when it passed all levels).
    pub fn sift_from(&self, mut g: Permutation, from: usize) -> (Permutation, usize) {
        let mut tmp = Permutation::identity(self.degree);
        for (l, lv) in self.levels.iter().enumerate().skip(from) {
            let x = g.image(lv.base_point);
            match lv.inverse_representative(x) {
                None => return (g, l),
                Some(inv) => {
                    g.then_into(inv, &mut tmp);
                    std::mem::swap(&mut g, &mut tmp);
                }
            }
        }
        let n = self.levels.len();
        (g, n)
    }

    pub fn sift(&self, g: &Permutation) -> (Permutation, usize) {
        self.sift_from(g.clone(), 0)
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        g.degree() == self.degree && self.sift(g).0.is_identity()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn levels(&self) -> &[ChainLevel] {
        &self.levels
    }

    pub fn base(&self) -> Vec<u32> {
        self.levels.iter().map(|l| l.base_point).collect()
    }

    pub fn order(&self) -> u128 {
        self.levels.iter().map(|l| l.orbit_len() as u128).product()
    }

    /// Chain for the pointwise stabilizer of the first `depth` base points.
    pub fn tail(&self, depth: usize) -> StabilizerChain {
        StabilizerChain {
            degree: self.degree,
            levels: self.levels[depth.min(self.levels.len())..].to_vec(),
        }
    }

    pub fn strong_generators(&self) -> Vec<Permutation> {
        let mut out: Vec<Permutation> = Vec::new();
        for l in &self.levels {
            for g in &l.generators {
                if !out.contains(g) {
                    out.push(g.clone());
                }
            }
        }
        out
    }

    /// Uniformly random element: a product of one random transversal element
    /// per level, deepest level first.
    pub fn random_element<R: rand::Rng>(&self, rng: &mut R) -> Permutation {
        let mut g = Permutation::identity(self.degree);
        for lv in self.levels.iter().rev() {
            let r = &lv.reps[rng.gen_range(0..lv.reps.len())];
            g = g.then(r);
        }
        g
    }

    /// Calls `f` on every group element exactly once.
    pub fn for_each_element<F: FnMut(&Permutation)>(&self, mut f: F) {
        let start = Permutation::identity(self.degree);
        self.walk(self.levels.len(), &start, &mut f);
    }

    fn walk<F: FnMut(&Permutation)>(&self, depth: usize, prefix: &Permutation, f: &mut F) {
        if depth == 0 {
            f(prefix);
            return;
        }
        let lv = &self.levels[depth - 1];
        for r in &lv.reps {
            let next = prefix.then(r);
            self.walk(depth - 1, &next, f);
        }
    }
}
