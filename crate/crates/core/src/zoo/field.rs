use serde::Serialize;

use crate::error::{Error, Result};

/// The finite field GF(q), q = p or p^2, with table-driven arithmetic.
///
/// Elements are integers `a0 + a1 * p` standing for `a0 + a1 * w`, where `w` is
/// a root of the modulus `x^2 + b x + c` (the lexicographically smallest
/// irreducible monic quadratic over GF(p)).
#[derive(Clone, Debug)]
pub struct Field {
    p: u32,
    k: u32,
    q: u32,
    modulus: Option<(u32, u32)>,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>,
    primitive: u32,
}

/// Serializable description of a field's construction.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct FieldSpec {
    pub characteristic: u32,
    pub degree: u32,
    /// `(b, c)` of the modulus `x^2 + b x + c`, when the degree is 2.
    pub modulus: Option<(u32, u32)>,
    pub primitive_element: u32,
}

pub const MAX_FIELD_ORDER: u32 = 289;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// `(p, k)` with `q = p^k`, k in {1, 2}.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if is_prime(q as u64) {
        return Some((q, 1));
    }
    let r = (q as f64).sqrt().round() as u32;
    if r * r == q && is_prime(r as u64) {
        return Some((r, 2));
    }
    None
}

impl Field {
    pub fn new(q: u32) -> Result<Self> {
        if q > MAX_FIELD_ORDER {
            return Err(Error::InvalidArgument(format!(
                "field order {q} exceeds {MAX_FIELD_ORDER}"
            )));
        }
        let (p, k) = prime_power(q)
            .ok_or_else(|| Error::InvalidArgument(format!("{q} is not a prime or prime square")))?;
        let modulus = if k == 2 {
            Some(smallest_irreducible_quadratic(p))
        } else {
            None
        };
        let qu = q as usize;
        let decompose = |x: u32| (x % p, x / p);
        let compose = |a0: u32, a1: u32| (a0 % p + (a1 % p) * p) as u16;
        let mut add = vec![0u16; qu * qu];
        let mut mul = vec![0u16; qu * qu];
        for x in 0..q {
            let (x0, x1) = decompose(x);
            for y in 0..q {
                let (y0, y1) = decompose(y);
                add[(x * q + y) as usize] = compose(x0 + y0, x1 + y1);
                let prod = match modulus {
                    None => compose(x0 * y0, 0),
                    Some((b, c)) => {
                        // w^2 = -b w - c
                        let c0 = x0 * y0;
                        let c1 = x0 * y1 + x1 * y0;
                        let c2 = x1 * y1 % p;
                        let r0 = (c0 + c2 * ((p - c) % p)) % p;
                        let r1 = (c1 + c2 * ((p - b) % p)) % p;
                        compose(r0, r1)
                    }
                };
                mul[(x * q + y) as usize] = prod;
            }
        }
        let mut neg = vec![0u16; qu];
        let mut inv = vec![0u16; qu];
        for x in 0..q {
            for y in 0..q {
                if add[(x * q + y) as usize] == 0 {
                    neg[x as usize] = y as u16;
                }
                if x != 0 && mul[(x * q + y) as usize] == 1 {
                    inv[x as usize] = y as u16;
                }
            }
        }
        let mut field = Field {
            p,
            k,
            q,
            modulus,
            add,
            mul,
            neg,
            inv,
            primitive: 0,
        };
        field.primitive = (1..q)
            .find(|&g| field.multiplicative_order(g) == q - 1)
            .expect("multiplicative group is cyclic");
        Ok(field)
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn spec(&self) -> FieldSpec {
        FieldSpec {
            characteristic: self.p,
            degree: self.k,
            modulus: self.modulus,
            primitive_element: self.primitive,
        }
    }

    #[inline]
    pub fn add(&self, x: u32, y: u32) -> u32 {
        self.add[(x * self.q + y) as usize] as u32
    }

    #[inline]
    pub fn mul(&self, x: u32, y: u32) -> u32 {
        self.mul[(x * self.q + y) as usize] as u32
    }

    #[inline]
    pub fn neg(&self, x: u32) -> u32 {
        self.neg[x as usize] as u32
    }

    #[inline]
    pub fn sub(&self, x: u32, y: u32) -> u32 {
        self.add(x, self.neg(y))
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, x: u32) -> Option<u32> {
        (x != 0).then(|| self.inv[x as usize] as u32)
    }

    pub fn pow(&self, x: u32, mut e: u32) -> u32 {
        let mut acc = 1;
        let mut base = x;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn primitive_element(&self) -> u32 {
        self.primitive
    }

    pub fn multiplicative_order(&self, x: u32) -> u32 {
        if x == 0 {
            return 0;
        }
        let mut y = x;
        let mut k = 1;
        while y != 1 {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    pub fn is_square(&self, x: u32) -> bool {
        x == 0 || self.pow(x, (self.q - 1) / 2) == 1
    }
}

fn smallest_irreducible_quadratic(p: u32) -> (u32, u32) {
    for b in 0..p {
        for c in 0..p {
            if (0..p).all(|x| (x * x + b * x + c) % p != 0) {
                return (b, c);
            }
        }
    }
    unreachable!("irreducible quadratics exist over every prime field")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_axioms_on_small_fields() {
        for q in [5, 7, 9, 25, 49] {
            let f = Field::new(q).unwrap();
            for x in 0..q {
                for y in 0..q {
                    assert_eq!(f.add(x, y), f.add(y, x));
                    assert_eq!(f.mul(x, y), f.mul(y, x));
                    for z in 0..q {
                        assert_eq!(f.mul(x, f.mul(y, z)), f.mul(f.mul(x, y), z));
                        assert_eq!(f.mul(x, f.add(y, z)), f.add(f.mul(x, y), f.mul(x, z)));
                    }
                }
            }
        }
    }

    #[test]
    fn inverses_exist_for_all_supported_fields() {
        for q in 2..=MAX_FIELD_ORDER {
            if prime_power(q).is_none() {
                continue;
            }
            let f = Field::new(q).unwrap();
            for x in 1..q {
                let y = f.inv(x).unwrap();
                assert_eq!(f.mul(x, y), 1, "q={q} x={x}");
            }
            assert_eq!(f.multiplicative_order(f.primitive_element()), q - 1);
        }
    }

    #[test]
    fn gf25_modulus_is_smallest_irreducible() {
        let f = Field::new(25).unwrap();
        // x^2 + 2 is irreducible mod 5 (2 is a non-square), x^2 + 0x + c for c in {0,1} is not
        assert_eq!(f.spec().modulus, Some((0, 2)));
    }

    #[test]
    fn rejects_unsupported_orders() {
        assert!(Field::new(6).is_err());
        assert!(Field::new(27).is_err());
        assert!(Field::new(361).is_err());
    }
}
