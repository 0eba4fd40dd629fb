use crate::error::{Error, Result};
use crate::perm::{PermGroup, Permutation};

use super::field::{prime_power, Field};

/// Points of the projective line over GF(q): field elements `0..q` plus
/// infinity at index `q`. A Möbius map `z -> (a z + b) / (c z + d)`.
fn mobius(f: &Field, a: u32, b: u32, c: u32, d: u32) -> Permutation {
    let q = f.order();
    let images = (0..=q)
        .map(|z| {
            if z == q {
                return match f.inv(c) {
                    Some(ci) => f.mul(a, ci),
                    None => q,
                };
            }
            let num = f.add(f.mul(a, z), b);
            let den = f.add(f.mul(c, z), d);
            match f.inv(den) {
                Some(di) => f.mul(num, di),
                None => q,
            }
        })
        .collect();
    Permutation::from_images(images).expect("invertible Möbius map")
}

fn check_q(q: u32) -> Result<Field> {
    if q < 5 {
        return Err(Error::InvalidArgument(format!("q = {q} must be at least 5")));
    }
    let field = Field::new(q)?;
    if field.characteristic() == 2 {
        return Err(Error::Unsupported(format!("even q = {q}")));
    }
    Ok(field)
}

/// PSL(2, q) on the q + 1 points of the projective line, q = p or p^2.
pub fn psl2(q: u32) -> Result<PermGroup> {
    let f = check_q(q)?;
    let t = f.primitive_element();
    let t2 = f.mul(t, t);
    let gens = vec![
        mobius(&f, 1, 1, 0, 1),
        // diag(t, 1/t) has determinant 1 and acts as z -> t^2 z
        mobius(&f, t2, 0, 0, 1),
        mobius(&f, 0, f.neg(1), 1, 0),
    ];
    PermGroup::new(q as usize + 1, gens)
}

/// PGL(2, p) on the p + 1 projective points, p prime.
pub fn pgl2(p: u32) -> Result<PermGroup> {
    match prime_power(p) {
        Some((_, 1)) => {}
        _ => return Err(Error::InvalidArgument(format!("pgl2 needs a prime, got {p}"))),
    }
    let f = check_q(p)?;
    let t = f.primitive_element();
    let gens = vec![
        mobius(&f, 1, 1, 0, 1),
        mobius(&f, t, 0, 0, 1),
        mobius(&f, 0, f.neg(1), 1, 0),
    ];
    PermGroup::new(p as usize + 1, gens)
}

/// SL(2, q) acting faithfully on nonzero vectors of GF(q)^2 modulo the
/// odd-order subgroup of scalars.
///
/// For q = 25 this is a 208-point action. The central involution `-I`
/// survives since -1 has even multiplicative order.
pub fn sl2(q: u32) -> Result<PermGroup> {
    let f = check_q(q)?;
    let mut odd = q - 1;
    while odd.is_multiple_of(2) {
        odd /= 2;
    }
    let t = f.primitive_element();
    let step = (q - 1) / odd;
    let scalars: Vec<u32> = (0..odd).map(|k| f.pow(t, k * step)).collect();

    let n = (q * q) as usize;
    let mut class_of = vec![u32::MAX; n];
    let mut reps = Vec::new();
    for v in 1..q * q {
        if class_of[v as usize] != u32::MAX {
            continue;
        }
        let (x, y) = (v % q, v / q);
        for &s in &scalars {
            let w = f.mul(s, x) + f.mul(s, y) * q;
            class_of[w as usize] = reps.len() as u32;
        }
        reps.push((x, y));
    }

    // row vector (x, y) times [[a, b], [c, d]]
    let act = |a: u32, b: u32, c: u32, d: u32| {
        let images = reps
            .iter()
            .map(|&(x, y)| {
                let nx = f.add(f.mul(x, a), f.mul(y, c));
                let ny = f.add(f.mul(x, b), f.mul(y, d));
                class_of[(nx + ny * q) as usize]
            })
            .collect();
        Permutation::from_images(images).expect("matrix acts bijectively")
    };
    let ti = f.inv(t).expect("primitive element is nonzero");
    let gens = vec![act(1, 1, 0, 1), act(t, 0, 0, ti), act(0, 1, f.neg(1), 0)];
    PermGroup::new(reps.len(), gens)
}

pub fn psl2_order(q: u128) -> u128 {
    q * (q * q - 1) / if q % 2 == 1 { 2 } else { 1 }
}
