use std::sync::OnceLock;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::perm::{PermGroup, Permutation};

const J1_DATA: &str = include_str!("../../data/j1_266.txt");
const J1_SHA256: &str = "f18a4af81d8eb5ca440df6d644b038694040f7bce0686bdbe46e73da25eaf962";
pub const J1_ORDER: u128 = 175_560;
pub const J1_DEGREE: usize = 266;
const SIMPLICITY_SAMPLES: usize = 50;

static J1: OnceLock<std::result::Result<PermGroup, String>> = OnceLock::new();

/// The sporadic group J1 on 266 points, validated on first use.
pub fn j1() -> Result<PermGroup> {
    J1.get_or_init(|| load_and_validate(J1_DATA).map_err(|e| e.to_string()))
        .clone()
        .map_err(Error::CorruptedData)
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

pub(crate) fn parse_generators(text: &str, degree: usize) -> Result<Vec<Permutation>> {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(|line| {
            let images = line
                .split_whitespace()
                .map(|t| {
                    t.parse::<u32>()
                        .map_err(|e| Error::CorruptedData(format!("bad entry {t:?}: {e}")))
                })
                .collect::<Result<Vec<u32>>>()?;
            if images.len() != degree {
                return Err(Error::CorruptedData(format!(
                    "generator has {} images, expected {degree}",
                    images.len()
                )));
            }
            Permutation::from_images(images).map_err(|e| Error::CorruptedData(e.to_string()))
        })
        .collect()
}

fn load_and_validate(text: &str) -> Result<PermGroup> {
    let digest = hex(&Sha256::digest(text.as_bytes()));
    if digest != J1_SHA256 {
        return Err(Error::CorruptedData(format!("J1 data hash mismatch: {digest}")));
    }
    let gens = parse_generators(text, J1_DEGREE)?;
    if gens.len() != 2 {
        return Err(Error::CorruptedData(format!("expected 2 generators, found {}", gens.len())));
    }
    let group = PermGroup::new(J1_DEGREE, gens)?;
    validate_simple_group(&group, J1_ORDER)?;
    Ok(group)
}

/// Order and transitivity check, then normal closures of random elements must
/// all be the whole group.
pub(crate) fn validate_simple_group(group: &PermGroup, order: u128) -> Result<()> {
    let found = group.order();
    if found != order {
        return Err(Error::CorruptedData(format!("order {found}, expected {order}")));
    }
    if !group.is_transitive() {
        return Err(Error::CorruptedData("group is intransitive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut sampled = 0;
    while sampled < SIMPLICITY_SAMPLES {
        let x = group.random_element(&mut rng);
        if x.is_identity() {
            continue;
        }
        sampled += 1;
        let n = group.normal_closure(std::slice::from_ref(&x))?;
        if n.order() != order {
            return Err(Error::CorruptedData(format!(
                "normal closure of {x} has order {}",
                n.order()
            )));
        }
    }
    Ok(())
}
