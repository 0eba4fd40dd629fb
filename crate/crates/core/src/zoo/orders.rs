use serde::Serialize;

use crate::error::{Error, Result};

use super::field::is_prime;

/// A simple group order together with the odd square-free cofactor it was
/// tabulated under.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SimpleGroupRecord {
    pub name: String,
    pub order: u128,
    pub order_factorization: Vec<(u64, u32)>,
    pub n_value: u64,
    /// Generated from the PSL(2, p) order formula rather than the fixed table.
    pub from_formula: bool,
}

impl SimpleGroupRecord {
    fn new(name: &str, factorization: &[(u64, u32)], n_value: u64, from_formula: bool) -> Self {
        let order = factorization
            .iter()
            .map(|&(p, e)| (p as u128).pow(e))
            .product();
        SimpleGroupRecord {
            name: name.to_string(),
            order,
            order_factorization: factorization.to_vec(),
            n_value,
            from_formula,
        }
    }
}

pub const DEFAULT_PSL2_BOUND: u64 = 10_000;

/// The fixed rows of the database.
pub fn simple_order_table() -> Vec<SimpleGroupRecord> {
    type Row = (&'static str, &'static [(u64, u32)], u64);
    let rows: [Row; 14] = [
        ("M22", &[(2, 7), (3, 2), (5, 1), (7, 1), (11, 1)], 3 * 7 * 11),
        ("PSp(4,4)", &[(2, 8), (3, 2), (5, 2), (17, 1)], 3 * 5 * 17),
        ("M23", &[(2, 7), (3, 2), (5, 1), (7, 1), (11, 1), (23, 1)], 7 * 11 * 23),
        ("PSL(2,25)", &[(2, 3), (3, 1), (5, 2), (13, 1)], 3 * 5 * 13),
        ("J1", &[(2, 3), (3, 1), (5, 1), (7, 1), (11, 1), (19, 1)], 7 * 11 * 19),
        ("PSL(2,2^8)", &[(2, 8), (3, 1), (5, 1), (17, 1), (257, 1)], 3 * 17 * 257),
        ("J2", &[(2, 7), (3, 3), (5, 2), (7, 1)], 3 * 5 * 7),
        ("PSL(5,2)", &[(2, 10), (3, 2), (5, 1), (7, 1), (31, 1)], 3 * 7 * 31),
        ("Sz(32)", &[(2, 10), (5, 2), (31, 1), (41, 1)], 5 * 31 * 41),
        ("PSL(2,2^6)", &[(2, 6), (3, 2), (5, 1), (7, 1), (13, 1)], 3 * 7 * 13),
        ("PSU(3,4)", &[(2, 6), (3, 1), (5, 2), (13, 1)], 3 * 5 * 13),
        ("M23", &[(2, 7), (3, 2), (5, 1), (7, 1), (11, 1), (23, 1)], 3 * 7 * 11 * 23),
        ("J1", &[(2, 3), (3, 1), (5, 1), (7, 1), (11, 1), (19, 1)], 3 * 7 * 11 * 19),
        ("M24", &[(2, 10), (3, 3), (5, 1), (7, 1), (11, 1), (23, 1)], 3 * 7 * 11 * 23),
    ];
    rows.iter()
        .map(|(name, f, n)| SimpleGroupRecord::new(name, f, *n, false))
        .collect()
}

pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        let mut e = 0;
        while n.is_multiple_of(d) {
            n /= d;
            e += 1;
        }
        if e > 0 {
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Does `order` equal `2^i 3^j 5 n` with `1 <= i <= 11`, `0 <= j <= 2`?
pub fn order_matches(order: u128, n: u64) -> bool {
    let base = 5 * n as u128;
    if !order.is_multiple_of(base) {
        return false;
    }
    let mut rest = order / base;
    let mut i = 0;
    while rest.is_multiple_of(2) {
        rest /= 2;
        i += 1;
    }
    let mut j = 0;
    while rest.is_multiple_of(3) {
        rest /= 3;
        j += 1;
    }
    rest == 1 && (1..=11).contains(&i) && j <= 2
}

fn check_n(n: u64) -> Result<()> {
    let f = factorize(n);
    if n.is_multiple_of(2) || f.iter().any(|&(_, e)| e > 1) || f.len() < 3 {
        return Err(Error::InvalidArgument(format!(
            "n = {n} must be odd, square-free and have at least 3 prime factors"
        )));
    }
    Ok(())
}

/// Records whose order has the form `2^i 3^j 5 n`, from the fixed table and
/// from PSL(2, p) for primes `5 <= p <= psl2_bound`.
pub fn filter_simple_orders_with_bound(n: u64, psl2_bound: u64) -> Result<Vec<SimpleGroupRecord>> {
    check_n(n)?;
    let mut out: Vec<SimpleGroupRecord> = simple_order_table()
        .into_iter()
        .filter(|r| order_matches(r.order, n))
        .map(|mut r| {
            r.n_value = n;
            r
        })
        .collect();
    // groups listed under two n values appear once
    let mut seen = std::collections::BTreeSet::new();
    out.retain(|r| seen.insert(r.name.clone()));
    for p in 5..=psl2_bound {
        if !is_prime(p) {
            continue;
        }
        let order = p as u128 * (p as u128 * p as u128 - 1) / 2;
        if order_matches(order, n) {
            let f = factorize_u128(order);
            out.push(SimpleGroupRecord::new(&format!("PSL(2,{p})"), &f, n, true));
        }
    }
    Ok(out)
}

pub fn filter_simple_orders(n: u64) -> Result<Vec<SimpleGroupRecord>> {
    filter_simple_orders_with_bound(n, DEFAULT_PSL2_BOUND)
}

fn factorize_u128(n: u128) -> Vec<(u64, u32)> {
    // orders here are below 2^64
    factorize(u64::try_from(n).expect("order fits in u64"))
}
