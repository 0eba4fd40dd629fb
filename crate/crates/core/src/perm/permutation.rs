use std::fmt;
use std::hash::{Hash, Hasher};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A bijection on `{0, .., d-1}` stored as its image sequence.
///
/// Points are acted on from the right: `x^p` is `p.image(x)`, and the product
/// `p * q` applies `p` first, then `q`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Hash for Permutation {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.images.hash(state);
    }
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        if images.is_empty() {
            return Err(Error::NotAPermutation("degree must be at least 1".into()));
        }
        let mut seen = vec![false; images.len()];
        for &x in &images {
            let x = x as usize;
            if x >= images.len() || seen[x] {
                return Err(Error::NotAPermutation(format!(
                    "image {x} repeated or out of range"
                )));
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    /// Builds a permutation from disjoint cycles, e.g. `&[&[0, 1, 2]]`.
    pub fn from_cycles(degree: usize, cycles: &[&[u32]]) -> Result<Self> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (i, &x) in cycle.iter().enumerate() {
                let next = cycle[(i + 1) % cycle.len()];
                if x as usize >= degree || next as usize >= degree {
                    return Err(Error::PointOutOfRange {
                        point: x.max(next) as usize,
                        degree,
                    });
                }
                if touched[x as usize] {
                    return Err(Error::NotAPermutation(format!(
                        "point {x} appears in two cycles"
                    )));
                }
                touched[x as usize] = true;
                images[x as usize] = next;
            }
        }
        Permutation::from_images(images)
    }

    /// Parses cycle notation such as `(0 1 2)(3 4)` or `()`.
    pub fn parse_cycles(degree: usize, text: &str) -> Result<Self> {
        let mut cycles: Vec<Vec<u32>> = Vec::new();
        let mut rest = text.trim();
        while !rest.is_empty() {
            let open = rest
                .strip_prefix('(')
                .ok_or_else(|| Error::Parse(format!("expected '(' in {text:?}")))?;
            let close = open
                .find(')')
                .ok_or_else(|| Error::Parse(format!("unclosed cycle in {text:?}")))?;
            let body = &open[..close];
            let cycle = body
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .map(|s| {
                    s.parse::<u32>()
                        .map_err(|_| Error::Parse(format!("bad point {s:?}")))
                })
                .collect::<Result<Vec<_>>>()?;
            if !cycle.is_empty() {
                cycles.push(cycle);
            }
            rest = open[close + 1..].trim_start();
        }
        let refs: Vec<&[u32]> = cycles.iter().map(|c| c.as_slice()).collect();
        Permutation::from_cycles(degree, &refs)
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn image(&self, x: u32) -> u32 {
        self.images[x as usize]
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn into_images(self) -> Vec<u32> {
        self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// `x -> other(self(x))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(self.then(other))
    }

    /// Unchecked left-to-right product; degrees must agree.
    #[inline]
    pub fn then(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: self.images.iter().map(|&x| other.images[x as usize]).collect(),
        }
    }

    /// Writes `self * other` into `out` without allocating.
    #[inline]
    pub fn then_into(&self, other: &Permutation, out: &mut Permutation) {
        out.images.clear();
        out.images
            .extend(self.images.iter().map(|&x| other.images[x as usize]));
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    pub fn pow(&self, mut k: i64) -> Permutation {
        let mut base = if k < 0 {
            k = -k;
            self.inverse()
        } else {
            self.clone()
        };
        let mut acc = Permutation::identity(self.degree());
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.then(&base);
            }
            base = base.then(&base);
            k >>= 1;
        }
        acc
    }

    /// `g^-1 * self * g`.
    pub fn conjugate_by(&self, g: &Permutation) -> Permutation {
        let mut images = vec![0u32; self.degree()];
        for (x, &y) in self.images.iter().enumerate() {
            images[g.images[x] as usize] = g.images[y as usize];
        }
        Permutation { images }
    }

    pub fn commutes_with(&self, other: &Permutation) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(x, &y)| other.images[y as usize] == self.images[other.images[x] as usize])
    }

    /// Lengths of all cycles, fixed points included.
    pub fn cycle_lengths(&self) -> Vec<usize> {
        let mut seen = vec![false; self.degree()];
        let mut lengths = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.images[x] as usize;
                len += 1;
            }
            lengths.push(len);
        }
        lengths
    }

    /// Element order: lcm of the cycle lengths.
    pub fn order(&self) -> u64 {
        self.cycle_lengths()
            .into_iter()
            .fold(1u64, |acc, l| lcm(acc, l as u64))
    }

    /// Order of `self * other` without materializing the product.
    pub fn order_of_product(&self, other: &Permutation) -> u64 {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut acc = 1u64;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0u64;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = other.images[self.images[x] as usize] as usize;
                len += 1;
            }
            acc = lcm(acc, len);
        }
        acc
    }

    pub fn fixes(&self, x: u32) -> bool {
        self.images[x as usize] == x
    }

    pub fn smallest_moved_point(&self) -> Option<u32> {
        self.images
            .iter()
            .enumerate()
            .find(|(i, &x)| *i as u32 != x)
            .map(|(i, _)| i as u32)
    }

    /// Nontrivial cycles as point lists, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.images[start] as usize == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x as u32);
                x = self.images[x] as usize;
            }
            out.push(cycle);
        }
        out
    }

    pub fn to_cycle_string(&self) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "()".to_string();
        }
        cycles
            .iter()
            .map(|c| {
                let body: Vec<String> = c.iter().map(|x| x.to_string()).collect();
                format!("({})", body.join(" "))
            })
            .collect()
    }

    /// 64-bit fingerprint of the image vector (FNV-1a).
    pub fn fingerprint(&self) -> u64 {
        fingerprint_images(&self.images)
    }
}

pub(crate) fn fingerprint_images(images: &[u32]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for &x in images {
        h ^= x as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

impl std::ops::Mul for &Permutation {
    type Output = Permutation;
    fn mul(self, rhs: &Permutation) -> Permutation {
        self.then(rhs)
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_cycle_string())
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_cycle_string())
    }
}

#[derive(Serialize, Deserialize)]
struct PermutationRepr {
    images: Vec<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    cycles: Option<String>,
}

impl Serialize for Permutation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PermutationRepr {
            images: self.images.clone(),
            cycles: Some(self.to_cycle_string()),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = PermutationRepr::deserialize(d)?;
        let p = Permutation::from_images(repr.images).map_err(serde::de::Error::custom)?;
        if let Some(c) = repr.cycles {
            let q = Permutation::parse_cycles(p.degree(), &c).map_err(serde::de::Error::custom)?;
            if q != p {
                return Err(serde::de::Error::custom("cycles disagree with images"));
            }
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn transposition_squares_to_identity() {
        let t = Permutation::from_cycles(2, &[&[0, 1]]).unwrap();
        assert!(t.compose(&t).unwrap().is_identity());
    }

    #[test]
    fn three_cycle_squared() {
        let c = Permutation::from_cycles(3, &[&[0, 1, 2]]).unwrap();
        let sq = c.compose(&c).unwrap();
        assert_eq!(sq, Permutation::from_cycles(3, &[&[0, 2, 1]]).unwrap());
    }

    #[test]
    fn random_times_inverse_is_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let mut v: Vec<u32> = (0..8).collect();
        v.shuffle(&mut rng);
        let p = Permutation::from_images(v).unwrap();
        assert!(p.compose(&p.inverse()).unwrap().is_identity());
    }

    #[test]
    fn composition_is_left_to_right() {
        let p = Permutation::from_cycles(3, &[&[0, 1]]).unwrap();
        let q = Permutation::from_cycles(3, &[&[1, 2]]).unwrap();
        // 0 -p-> 1 -q-> 2
        assert_eq!(p.compose(&q).unwrap().image(0), 2);
    }

    #[test]
    fn degree_mismatch_is_rejected() {
        let p = Permutation::identity(3);
        let q = Permutation::identity(4);
        assert!(matches!(p.compose(&q), Err(Error::DegreeMismatch { .. })));
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::from_images(vec![0, 0]).is_err());
        assert!(Permutation::from_images(vec![0, 2]).is_err());
        assert!(Permutation::from_images(vec![]).is_err());
    }

    #[test]
    fn cycle_string_roundtrip() {
        let p = Permutation::from_cycles(6, &[&[0, 3, 1], &[4, 5]]).unwrap();
        assert_eq!(p.to_cycle_string(), "(0 3 1)(4 5)");
        assert_eq!(Permutation::parse_cycles(6, "(0 3 1)(4 5)").unwrap(), p);
        assert_eq!(Permutation::parse_cycles(6, "()").unwrap(), Permutation::identity(6));
        assert_eq!(p.order(), 6);
    }

    #[test]
    fn json_form_carries_images_and_cycles() {
        let p = Permutation::from_cycles(3, &[&[0, 1, 2]]).unwrap();
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"{"images":[1,2,0],"cycles":"(0 1 2)"}"#);
        let back: Permutation = serde_json::from_str(r#"{"images":[1,2,0]}"#).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn conjugation_matches_products() {
        let p = Permutation::from_cycles(5, &[&[0, 1, 2]]).unwrap();
        let g = Permutation::from_cycles(5, &[&[0, 4], &[1, 3]]).unwrap();
        let direct = g.inverse().then(&p).then(&g);
        assert_eq!(p.conjugate_by(&g), direct);
        assert_eq!(p.order_of_product(&g), p.then(&g).order());
    }
}
