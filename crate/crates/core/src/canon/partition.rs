use std::collections::VecDeque;

use crate::graph::Graph;

#[inline]
pub(crate) fn mix(h: u64, x: u64) -> u64 {
    let mut z = h ^ x.wrapping_add(0x9e37_79b9_7f4a_7c15).wrapping_add(h << 6).wrapping_add(h >> 2);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Ordered partition of the vertices. Cells are contiguous ranges of `elems`
/// and are named by their start position.
#[derive(Clone, Debug)]
pub(crate) struct Partition {
    pub elems: Vec<u32>,
    pub pos: Vec<u32>,
    pub cell: Vec<u32>,
    pub end: Vec<u32>,
    pub cells: usize,
}

/// Reusable buffers for refinement.
#[derive(Default)]
pub(crate) struct Scratch {
    count: Vec<u32>,
    touched: Vec<u32>,
    queue: VecDeque<u32>,
    in_queue: Vec<bool>,
}

impl Partition {
    /// Cells in the given order; each cell's vertices sorted.
    pub fn from_cells(n: usize, cells: &[Vec<u32>]) -> Self {
        let mut p = Partition {
            elems: Vec::with_capacity(n),
            pos: vec![0; n],
            cell: vec![0; n],
            end: vec![0; n],
            cells: 0,
        };
        for c in cells {
            let start = p.elems.len() as u32;
            let mut c = c.clone();
            c.sort_unstable();
            for &v in &c {
                p.pos[v as usize] = p.elems.len() as u32;
                p.cell[v as usize] = start;
                p.elems.push(v);
            }
            if !c.is_empty() {
                p.end[start as usize] = p.elems.len() as u32;
                p.cells += 1;
            }
        }
        p
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_discrete(&self) -> bool {
        self.cells == self.len()
    }

    /// Cell starts in order.
    pub fn cell_starts(&self) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.cells);
        let mut s = 0;
        while (s as usize) < self.len() {
            out.push(s);
            s = self.end[s as usize];
        }
        out
    }

    pub fn cell_members(&self, start: u32) -> &[u32] {
        &self.elems[start as usize..self.end[start as usize] as usize]
    }

    /// First cell of maximum size, if any cell is non-singleton.
    pub fn target_cell(&self) -> Option<u32> {
        let mut best: Option<(u32, u32)> = None;
        let mut s = 0u32;
        while (s as usize) < self.len() {
            let e = self.end[s as usize];
            let size = e - s;
            if size > 1 && best.is_none_or(|(_, b)| size > b) {
                best = Some((s, size));
            }
            s = e;
        }
        best.map(|(s, _)| s)
    }

    /// Splits `v` off the front of its cell and refines. Returns the trace hash.
    pub fn individualize(&mut self, g: &Graph, v: u32, scratch: &mut Scratch) -> u64 {
        let c = self.cell[v as usize];
        let e = self.end[c as usize];
        let here = self.pos[v as usize];
        let first = self.elems[c as usize];
        self.elems.swap(c as usize, here as usize);
        self.pos[first as usize] = here;
        self.pos[v as usize] = c;
        self.end[c as usize] = c + 1;
        self.end[c as usize + 1] = e;
        for i in c + 1..e {
            self.cell[self.elems[i as usize] as usize] = c + 1;
        }
        self.cells += 1;
        let h = mix(0x1d, c as u64);
        mix(h, self.refine(g, &[c], scratch))
    }

    /// Equitable refinement starting from the given splitter cells.
    pub fn refine(&mut self, g: &Graph, splitters: &[u32], scratch: &mut Scratch) -> u64 {
        let n = self.len();
        if scratch.count.len() != n {
            scratch.count = vec![0; n];
            scratch.in_queue = vec![false; n];
        }
        let mut trace = 0u64;
        scratch.queue.clear();
        for &s in splitters {
            scratch.queue.push_back(s);
            scratch.in_queue[s as usize] = true;
        }
        let mut groups: Vec<(u32, u32)> = Vec::new();
        let mut frags: Vec<(u32, u32)> = Vec::new();
        while let Some(w) = scratch.queue.pop_front() {
            scratch.in_queue[w as usize] = false;
            if self.is_discrete() {
                continue;
            }
            let we = self.end[w as usize];
            scratch.touched.clear();
            for i in w..we {
                let x = self.elems[i as usize];
                for &y in g.neighbors(x) {
                    if scratch.count[y as usize] == 0 {
                        scratch.touched.push(y);
                    }
                    scratch.count[y as usize] += 1;
                }
            }
            // group touched vertices by (cell, count)
            let count = &scratch.count;
            let cell = &self.cell;
            scratch
                .touched
                .sort_unstable_by_key(|&y| (cell[y as usize], count[y as usize], y));
            trace = mix(trace, w as u64);
            let mut i = 0;
            let touched = std::mem::take(&mut scratch.touched);
            while i < touched.len() {
                let c = self.cell[touched[i] as usize];
                let mut j = i;
                while j < touched.len() && self.cell[touched[j] as usize] == c {
                    j += 1;
                }
                self.split_cell(c, &touched[i..j], scratch, &mut groups, &mut frags, &mut trace);
                i = j;
            }
            for &y in &touched {
                scratch.count[y as usize] = 0;
            }
            scratch.touched = touched;
        }
        mix(trace, self.cells as u64)
    }

    fn split_cell(
        &mut self,
        c: u32,
        touched: &[u32],
        scratch: &mut Scratch,
        groups: &mut Vec<(u32, u32)>,
        frags: &mut Vec<(u32, u32)>,
        trace: &mut u64,
    ) {
        let e = self.end[c as usize];
        let size = e - c;
        let t = touched.len() as u32;
        // (count, how many)
        groups.clear();
        if t < size {
            groups.push((0, size - t));
        }
        for &y in touched {
            let k = scratch.count[y as usize];
            match groups.last_mut() {
                Some((last, m)) if *last == k => *m += 1,
                _ => groups.push((k, 1)),
            }
        }
        *trace = mix(*trace, c as u64);
        for &(k, m) in groups.iter() {
            *trace = mix(mix(*trace, k as u64), m as u64);
        }
        if groups.len() == 1 || size == 1 {
            return;
        }
        // move touched vertices, in count order, to the back of the cell
        let base = e - t;
        for (i, &y) in touched.iter().enumerate() {
            let target = base + i as u32;
            let from = self.pos[y as usize];
            let other = self.elems[target as usize];
            self.elems.swap(from as usize, target as usize);
            self.pos[other as usize] = from;
            self.pos[y as usize] = target;
        }
        frags.clear();
        let mut start = c;
        for &(_, m) in groups.iter() {
            frags.push((start, start + m));
            start += m;
        }
        for &(a, b) in frags.iter() {
            self.end[a as usize] = b;
            if a != c {
                for i in a..b {
                    self.cell[self.elems[i as usize] as usize] = a;
                }
            }
        }
        self.cells += frags.len() - 1;
        if scratch.in_queue[c as usize] {
            for &(a, _) in &frags[1..] {
                scratch.queue.push_back(a);
                scratch.in_queue[a as usize] = true;
            }
        } else {
            let largest = frags
                .iter()
                .enumerate()
                .max_by(|(i, x), (j, y)| (x.1 - x.0).cmp(&(y.1 - y.0)).then(j.cmp(i)))
                .map(|(i, _)| i)
                .expect("at least two fragments");
            for (i, &(a, _)) in frags.iter().enumerate() {
                if i != largest {
                    scratch.queue.push_back(a);
                    scratch.in_queue[a as usize] = true;
                }
            }
        }
    }
}
