use crate::error::{Error, Result};
use crate::perm::{PermGroup, Permutation};

fn shifted(p: &Permutation, offset: u32, degree: usize) -> Permutation {
    let mut images: Vec<u32> = (0..degree as u32).collect();
    for (x, &y) in p.images().iter().enumerate() {
        images[x + offset as usize] = y + offset;
    }
    Permutation::from_images(images).expect("shifted permutation")
}

/// `A x B` acting on the disjoint union of the two domains.
pub fn direct_product(a: &PermGroup, b: &PermGroup) -> Result<PermGroup> {
    let degree = a.degree() + b.degree();
    let mut gens: Vec<Permutation> = a
        .generators()
        .iter()
        .map(|g| shifted(g, 0, degree))
        .collect();
    gens.extend(b.generators().iter().map(|g| shifted(g, a.degree() as u32, degree)));
    PermGroup::new(degree, gens)
}

/// The involution exchanging `x` and `x + d` on `2d` points.
pub fn swap_involution(d: usize) -> Permutation {
    let images = (0..2 * d as u32).map(|x| (x + d as u32) % (2 * d as u32)).collect();
    Permutation::from_images(images).expect("swap is a permutation")
}

/// `G x Z2` on two copies of G's domain. G acts diagonally and the last
/// generator is the central involution swapping the copies.
pub fn direct_with_z2(g: &PermGroup) -> Result<PermGroup> {
    let d = g.degree();
    let mut gens: Vec<Permutation> = g
        .nontrivial_generators()
        .map(|p| {
            let images = p
                .images()
                .iter()
                .copied()
                .chain(p.images().iter().map(|&y| y + d as u32))
                .collect();
            Permutation::from_images(images).expect("diagonal copy")
        })
        .collect();
    gens.push(swap_involution(d));
    PermGroup::new(2 * d, gens)
}

pub fn cyclic(n: usize) -> Result<PermGroup> {
    if n == 0 {
        return Err(Error::InvalidArgument("cyclic group on 0 points".into()));
    }
    let images = (0..n as u32).map(|x| (x + 1) % n as u32).collect();
    PermGroup::new(n, vec![Permutation::from_images(images)?])
}

/// Dihedral group of order `2n` on `n` points.
pub fn dihedral(n: usize) -> Result<PermGroup> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!("dihedral group needs n >= 3, got {n}")));
    }
    let rot = (0..n as u32).map(|x| (x + 1) % n as u32).collect();
    let refl = (0..n as u32).map(|x| (n as u32 - x) % n as u32).collect();
    PermGroup::new(
        n,
        vec![Permutation::from_images(rot)?, Permutation::from_images(refl)?],
    )
}

pub fn symmetric(n: usize) -> Result<PermGroup> {
    if n < 2 {
        return Ok(PermGroup::trivial(n.max(1)));
    }
    let cycle = (0..n as u32).map(|x| (x + 1) % n as u32).collect();
    let t = Permutation::from_cycles(n, &[&[0, 1]])?;
    PermGroup::new(n, vec![Permutation::from_images(cycle)?, t])
}

pub fn alternating(n: usize) -> Result<PermGroup> {
    if n < 3 {
        return Ok(PermGroup::trivial(n.max(1)));
    }
    let gens = (2..n as u32)
        .map(|k| Permutation::from_cycles(n, &[&[0, 1, k]]))
        .collect::<Result<Vec<_>>>()?;
    PermGroup::new(n, gens)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_family_orders() {
        assert_eq!(cyclic(7).unwrap().order(), 7);
        assert_eq!(dihedral(5).unwrap().order(), 10);
        assert_eq!(symmetric(5).unwrap().order(), 120);
        assert_eq!(alternating(5).unwrap().order(), 60);
        assert_eq!(alternating(6).unwrap().order(), 360);
    }

    #[test]
    fn direct_product_of_a5_and_d10() {
        let g = direct_product(&alternating(5).unwrap(), &dihedral(5).unwrap()).unwrap();
        assert_eq!(g.degree(), 10);
        assert_eq!(g.order(), 600);
    }

    #[test]
    fn swap_is_central_and_order_doubles() {
        let a5 = alternating(5).unwrap();
        let g = direct_with_z2(&a5).unwrap();
        assert_eq!(g.order(), 120);
        let z = g.generators().last().unwrap();
        assert_eq!(z, &swap_involution(5));
        assert!(g.generators().iter().all(|h| h.commutes_with(z)));
        let center = PermGroup::new(10, vec![z.clone()]).unwrap();
        assert!(center.is_semiregular());
    }
}
