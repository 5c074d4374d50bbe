//! Finite subgroups of PGL3: closure, element orders, cyclic subgroup lattice.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{CyclotomicElement, GaloisElement};
use crate::linalg::mat_mul;
use crate::plane::{lift_maps, ProjMap};

pub const DEFAULT_BOUND: usize = 360;

/// A finite group of projective maps, elements listed in breadth-first order
/// from the identity.
#[derive(Clone, Debug)]
pub struct ProjGroup {
    order_n: u32,
    generators: Vec<ProjMap>,
    elements: Vec<ProjMap>,
    index: HashMap<ProjMap, usize>,
}

/// Serialized group document: only the generators are stored.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct GroupDoc {
    pub generators: Vec<ProjMap>,
}

pub fn closure(gens: &[ProjMap], bound: usize) -> Result<ProjGroup> {
    closure_in(gens, 1, bound)
}

/// Closure after lifting every generator to a multiple of `order`.
pub fn closure_in(gens: &[ProjMap], order: u32, bound: usize) -> Result<ProjGroup> {
    if bound == 0 {
        return Err(Error::Precondition("bound must be at least 1".into()));
    }
    let (n, gens) = lift_maps(gens, order)?;
    let id = ProjMap::identity(n);
    let mut elements = vec![id.clone()];
    let mut index = HashMap::from([(id, 0usize)]);
    let mut head = 0;
    while head < elements.len() {
        let current = elements[head].clone();
        head += 1;
        for g in &gens {
            let p = current.compose(g);
            if !index.contains_key(&p) {
                if elements.len() >= bound {
                    return Err(Error::BoundExceeded(bound));
                }
                index.insert(p.clone(), elements.len());
                elements.push(p);
            }
        }
    }
    Ok(ProjGroup {
        order_n: n,
        generators: gens,
        elements,
        index,
    })
}

/// Least n with A^n scalar, together with the scalar c in A^n = c I for the
/// stored representative of A.
pub fn element_order(a: &ProjMap, bound: usize) -> Result<(u32, CyclotomicElement)> {
    let mut acc = a.entries().clone();
    for n in 1..=bound {
        let c = acc[0][0].clone();
        let scalar = (0..3).all(|i| (0..3).all(|j| if i == j { acc[i][j] == c } else { acc[i][j].is_zero() }));
        if scalar {
            return Ok((n as u32, c));
        }
        acc = mat_mul(&acc, a.entries());
    }
    Err(Error::BoundExceeded(bound))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupStats {
    pub order: usize,
    pub abelian: bool,
    pub exponent: u32,
    pub center_size: usize,
}

/// A cyclic subgroup, by element ids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicSubgroup {
    pub generator: usize,
    pub order: u32,
    pub members: BTreeSet<usize>,
    pub class_id: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicSubgroupClass {
    pub id: usize,
    pub order: u32,
    pub representative: usize,
    pub subgroups: Vec<usize>,
}

/// All nontrivial cyclic subgroups, their conjugacy classes and the proper
/// containments `(smaller, larger)` between them.
#[derive(Clone, Debug)]
pub struct CyclicLattice {
    pub subgroups: Vec<CyclicSubgroup>,
    pub classes: Vec<CyclicSubgroupClass>,
    pub containment: Vec<(usize, usize)>,
}

impl CyclicLattice {
    /// Indices of subgroups properly containing subgroup `i`.
    pub fn overgroups(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.containment.iter().filter(move |(s, _)| *s == i).map(|(_, l)| *l)
    }
}

impl ProjGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Cyclotomic order of the coefficient field.
    pub fn field_order(&self) -> u32 {
        self.order_n
    }

    pub fn generators(&self) -> &[ProjMap] {
        &self.generators
    }

    pub fn elements(&self) -> &[ProjMap] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &ProjMap {
        &self.elements[i]
    }

    pub fn index_of(&self, a: &ProjMap) -> Option<usize> {
        if a.order() == self.order_n {
            return self.index.get(a).copied();
        }
        let n = crate::exactnum::lcm(a.order(), self.order_n);
        if n != self.order_n {
            return None;
        }
        a.lift_to(n).ok().and_then(|b| self.index.get(&b).copied())
    }

    pub fn contains(&self, a: &ProjMap) -> bool {
        self.index_of(a).is_some()
    }

    pub fn product(&self, i: usize, j: usize) -> usize {
        self.index[&self.elements[i].compose(&self.elements[j])]
    }

    pub fn inverse(&self, i: usize) -> usize {
        self.index[&self.elements[i].inverse()]
    }

    pub fn multiplication_table(&self) -> Vec<Vec<usize>> {
        (0..self.order()).map(|i| (0..self.order()).map(|j| self.product(i, j)).collect()).collect()
    }

    /// Element ids of the cyclic subgroup generated by element `i`, in power order.
    pub fn powers(&self, i: usize) -> Vec<usize> {
        let mut out = vec![0];
        let mut cur = i;
        while cur != 0 {
            out.push(cur);
            cur = self.product(cur, i);
        }
        out
    }

    pub fn element_order_of(&self, i: usize) -> u32 {
        self.powers(i).len() as u32
    }

    pub fn lift_to(&self, target: u32) -> Result<Self> {
        closure_in(&self.generators, target, self.order().max(1))
    }

    /// The group generated by the Galois conjugates of the generators.
    pub fn conjugate(&self, sigma: &GaloisElement) -> Result<Self> {
        let n = crate::exactnum::lcm(self.order_n, sigma.order());
        let s = sigma.lift_to(n)?;
        let gens = self
            .generators
            .iter()
            .map(|g| g.lift_to(n).and_then(|g| g.conjugate(&s)))
            .collect::<Result<Vec<_>>>()?;
        closure_in(&gens, n, self.order().max(1))
    }

    pub fn stats(&self) -> GroupStats {
        let n = self.order();
        let central: Vec<usize> = (0..n)
            .filter(|&i| self.generators.iter().all(|g| {
                let g = self.index[g];
                self.product(i, g) == self.product(g, i)
            }))
            .collect();
        let exponent = (0..n).fold(1u32, |acc, i| crate::exactnum::lcm(acc, self.element_order_of(i)));
        GroupStats {
            order: n,
            abelian: central.len() == n,
            exponent,
            center_size: central.len(),
        }
    }

    pub fn to_doc(&self) -> GroupDoc {
        GroupDoc {
            generators: self.generators.clone(),
        }
    }
}

pub fn cyclic_subgroup_classes(g: &ProjGroup) -> CyclicLattice {
    let n = g.order();
    let mut seen: HashMap<BTreeSet<usize>, usize> = HashMap::new();
    let mut subgroups: Vec<CyclicSubgroup> = Vec::new();
    for i in 1..n {
        let powers = g.powers(i);
        let members: BTreeSet<usize> = powers.iter().copied().collect();
        if !seen.contains_key(&members) {
            seen.insert(members.clone(), subgroups.len());
            subgroups.push(CyclicSubgroup {
                generator: i,
                order: powers.len() as u32,
                members,
                class_id: usize::MAX,
            });
        }
    }

    let inverses: Vec<usize> = (0..n).map(|h| g.inverse(h)).collect();
    let mut classes: Vec<CyclicSubgroupClass> = Vec::new();
    for s in 0..subgroups.len() {
        if subgroups[s].class_id != usize::MAX {
            continue;
        }
        let id = classes.len();
        let mut members = BTreeSet::new();
        for h in 0..n {
            let conj = g.product(g.product(inverses[h], subgroups[s].generator), h);
            let set: BTreeSet<usize> = g.powers(conj).into_iter().collect();
            members.insert(seen[&set]);
        }
        for &m in &members {
            subgroups[m].class_id = id;
        }
        classes.push(CyclicSubgroupClass {
            id,
            order: subgroups[s].order,
            representative: s,
            subgroups: members.into_iter().collect(),
        });
    }

    let mut containment = Vec::new();
    for (a, sa) in subgroups.iter().enumerate() {
        for (b, sb) in subgroups.iter().enumerate() {
            if sa.order < sb.order && sb.order % sa.order == 0 && sa.members.is_subset(&sb.members) {
                containment.push((a, b));
            }
        }
    }
    CyclicLattice {
        subgroups,
        classes,
        containment,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zeta(n: u32, k: i64) -> CyclotomicElement {
        CyclotomicElement::zeta_pow(n, k).unwrap()
    }

    fn diag(n: u32, k: [i64; 3]) -> ProjMap {
        ProjMap::diagonal([zeta(n, k[0]), zeta(n, k[1]), zeta(n, k[2])]).unwrap()
    }

    #[test]
    fn fermat_group_order() {
        let gens = vec![
            diag(4, [1, 0, 0]),
            diag(4, [0, 1, 0]),
            ProjMap::permutation(1, [1, 2, 0]).unwrap(),
            ProjMap::permutation(1, [1, 0, 2]).unwrap(),
        ];
        let g = closure(&gens, DEFAULT_BOUND).unwrap();
        assert_eq!(g.order(), 96);
        assert_eq!(g.field_order(), 4);
    }

    #[test]
    fn klein_four() {
        let i1 = ProjMap::from_ints(1, [[-1, 0, 0], [0, 1, 0], [0, 0, 1]]).unwrap();
        let i2 = ProjMap::from_ints(1, [[1, 0, 0], [0, -1, 0], [0, 0, 1]]).unwrap();
        let g = closure(&[i1, i2], DEFAULT_BOUND).unwrap();
        let st = g.stats();
        assert_eq!((st.order, st.exponent, st.abelian, st.center_size), (4, 2, true, 4));
        let lat = cyclic_subgroup_classes(&g);
        assert_eq!(lat.subgroups.len(), 3);
        assert_eq!(lat.classes.len(), 3);
        assert!(lat.containment.is_empty());
    }

    #[test]
    fn shear_exceeds_bound() {
        let s = ProjMap::from_ints(1, [[1, 1, 0], [0, 1, 0], [0, 0, 1]]).unwrap();
        assert_eq!(closure(std::slice::from_ref(&s), 400).unwrap_err(), Error::BoundExceeded(400));
        assert_eq!(element_order(&s, 50).unwrap_err(), Error::BoundExceeded(50));
    }

    #[test]
    fn element_orders() {
        let (n, c) = element_order(&diag(4, [1, 0, 0]), DEFAULT_BOUND).unwrap();
        assert_eq!(n, 4);
        assert!(c.is_one());
        let (n, c) = element_order(&ProjMap::permutation(1, [1, 2, 0]).unwrap(), DEFAULT_BOUND).unwrap();
        assert_eq!((n, c.is_one()), (3, true));
        let s = ProjMap::from_ints(1, [[2, 0, 0], [0, 2, 0], [0, 0, 2]]).unwrap();
        assert_eq!(element_order(&s, DEFAULT_BOUND).unwrap().0, 1);
        // (x : 2y : -z)^2 = (x : 4y : z) is not scalar, order is infinite
        let d = ProjMap::from_ints(1, [[1, 0, 0], [0, 2, 0], [0, 0, -1]]).unwrap();
        assert!(element_order(&d, 20).is_err());
    }

    #[test]
    fn s3_classes() {
        let g = closure(
            &[ProjMap::permutation(1, [1, 0, 2]).unwrap(), ProjMap::permutation(1, [1, 2, 0]).unwrap()],
            DEFAULT_BOUND,
        )
        .unwrap();
        let lat = cyclic_subgroup_classes(&g);
        let mut sizes: Vec<(u32, usize)> = lat.classes.iter().map(|c| (c.order, c.subgroups.len())).collect();
        sizes.sort();
        assert_eq!(sizes, vec![(2, 3), (3, 1)]);
        assert!(!g.stats().abelian);
        assert_eq!(g.stats().center_size, 1);
    }

    #[test]
    fn c4_chain() {
        let g = closure(&[diag(4, [1, 0, 0])], DEFAULT_BOUND).unwrap();
        let lat = cyclic_subgroup_classes(&g);
        assert_eq!(lat.classes.len(), 2);
        assert_eq!(lat.containment.len(), 1);
        let (s, l) = lat.containment[0];
        assert_eq!((lat.subgroups[s].order, lat.subgroups[l].order), (2, 4));
    }
}
