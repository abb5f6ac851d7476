//! Small groups in index space: enumerated elements, lazily built
//! multiplication columns, bitset subgroups and conjugacy classes.

use std::collections::HashMap;
use std::sync::OnceLock;

use crate::caps::Caps;
use crate::error::{CapKind, Result};
use crate::group::FiniteGroup;
use crate::perm::Perm;

/// A set of element indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bits(Vec<u64>);

impl Bits {
    pub fn new(len: usize) -> Bits {
        Bits(vec![0; len.div_ceil(64)])
    }

    #[inline]
    pub fn contains(&self, i: u32) -> bool {
        self.0[i as usize / 64] >> (i % 64) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, i: u32) -> bool {
        let (w, b) = (i as usize / 64, i % 64);
        let fresh = self.0[w] >> b & 1 == 0;
        self.0[w] |= 1 << b;
        fresh
    }

    pub fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_subset(&self, other: &Bits) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }

    pub fn intersect(&self, other: &Bits) -> Bits {
        Bits(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.0.iter().enumerate().flat_map(|(w, &word)| {
            (0..64).filter(move |b| word >> b & 1 == 1).map(move |b| (w * 64 + b) as u32)
        })
    }
}

/// A subgroup in index space, with a short generating list.
#[derive(Clone, Debug)]
pub struct SubTab {
    pub bits: Bits,
    pub gens: Vec<u32>,
    pub order: usize,
}

impl SubTab {
    pub fn contains(&self, i: u32) -> bool {
        self.bits.contains(i)
    }

    pub fn is_subgroup_of(&self, other: &SubTab) -> bool {
        self.order <= other.order && self.bits.is_subset(&other.bits)
    }

    /// Sort key: order first, then the element indices.
    pub fn key(&self) -> (usize, Vec<u32>) {
        (self.order, self.bits.iter().collect())
    }
}

pub struct Table {
    group: FiniteGroup,
    elements: Vec<Perm>,
    index: HashMap<Perm, u32>,
    gen_index: Vec<u32>,
    conj: Vec<Vec<u32>>,
    columns: Vec<OnceLock<Box<[u32]>>>,
}

impl Table {
    /// Enumerates `g`; fails if `|g|` exceeds the cap of the given kind.
    pub fn new(g: &FiniteGroup, caps: &Caps, kind: CapKind) -> Result<Table> {
        caps.check(kind, g.order())?;
        let elements = g.sorted_elements();
        let index: HashMap<Perm, u32> = elements.iter().enumerate().map(|(i, x)| (x.clone(), i as u32)).collect();
        let gen_index = g.generators().iter().map(|s| index[s]).collect();
        let conj = g
            .generators()
            .iter()
            .map(|s| elements.iter().map(|x| index[&x.conjugate(s)]).collect())
            .collect();
        let columns = (0..elements.len()).map(|_| OnceLock::new()).collect();
        Ok(Table { group: g.clone(), elements, index, gen_index, conj, columns })
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn element(&self, i: u32) -> &Perm {
        &self.elements[i as usize]
    }

    pub fn index_of(&self, x: &Perm) -> Option<u32> {
        self.index.get(x).copied()
    }

    /// Indices of `G`'s generators.
    pub fn generator_indices(&self) -> &[u32] {
        &self.gen_index
    }

    fn column(&self, b: u32) -> &[u32] {
        self.columns[b as usize].get_or_init(|| {
            let y = &self.elements[b as usize];
            self.elements.iter().map(|x| self.index[&x.compose(y)]).collect()
        })
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.column(b)[a as usize]
    }

    pub fn trivial(&self) -> SubTab {
        let mut bits = Bits::new(self.len());
        bits.insert(0);
        SubTab { bits, gens: Vec::new(), order: 1 }
    }

    pub fn whole(&self) -> SubTab {
        self.closure(&self.gen_index)
    }

    /// The subgroup generated by `gens`.
    pub fn closure(&self, gens: &[u32]) -> SubTab {
        let mut bits = Bits::new(self.len());
        bits.insert(0);
        let mut members = vec![0u32];
        let gens: Vec<u32> = gens.iter().copied().filter(|&g| g != 0).collect();
        let mut k = 0;
        while k < members.len() {
            let x = members[k];
            for &g in &gens {
                let y = self.mul(x, g);
                if bits.insert(y) {
                    members.push(y);
                }
            }
            k += 1;
        }
        SubTab { order: members.len(), bits, gens }
    }

    /// Extends `h` by `extra`, skipping generators already inside.
    pub fn extend(&self, h: &SubTab, extra: &[u32]) -> SubTab {
        let mut gens = h.gens.clone();
        let mut bits = h.bits.clone();
        let mut members: Vec<u32> = bits.iter().collect();
        for &e in extra {
            if bits.contains(e) {
                continue;
            }
            gens.push(e);
            // Right-multiply the whole current set by every generator until closed.
            let mut k = 0;
            while k < members.len() {
                let x = members[k];
                for &g in &gens {
                    let y = self.mul(x, g);
                    if bits.insert(y) {
                        members.push(y);
                    }
                }
                k += 1;
            }
        }
        SubTab { order: members.len(), bits, gens }
    }

    pub fn join(&self, a: &SubTab, b: &SubTab) -> SubTab {
        if b.is_subgroup_of(a) {
            return a.clone();
        }
        if a.is_subgroup_of(b) {
            return b.clone();
        }
        self.extend(a, &b.gens)
    }

    /// Image of `x` under conjugation by the `s`-th generator of `G`.
    #[inline]
    pub fn conjugate_by_generator(&self, x: u32, s: usize) -> u32 {
        self.conj[s][x as usize]
    }

    pub fn is_normal(&self, h: &SubTab) -> bool {
        (0..self.conj.len()).all(|s| h.gens.iter().all(|&x| h.contains(self.conjugate_by_generator(x, s))))
    }

    /// Smallest normal subgroup of `G` containing `xs`.
    pub fn normal_closure(&self, xs: &[u32]) -> SubTab {
        let mut h = self.closure(xs);
        let mut k = 0;
        while k < h.gens.len() {
            let x = h.gens[k];
            for s in 0..self.conj.len() {
                let c = self.conjugate_by_generator(x, s);
                if !h.contains(c) {
                    h = self.extend(&h, &[c]);
                }
            }
            k += 1;
        }
        h
    }

    /// Largest normal subgroup of `G` inside `h`.
    pub fn core(&self, h: &SubTab) -> SubTab {
        let mut bits = h.bits.clone();
        loop {
            let mut next = bits.clone();
            for s in 0..self.conj.len() {
                let mut conj = Bits::new(self.len());
                for x in bits.iter() {
                    conj.insert(self.conjugate_by_generator(x, s));
                }
                next = next.intersect(&conj);
            }
            if next == bits {
                break;
            }
            bits = next;
        }
        self.from_bits(&bits)
    }

    /// Re-derives a short generating set for a set known to be a subgroup.
    pub fn from_bits(&self, bits: &Bits) -> SubTab {
        let mut h = self.trivial();
        for x in bits.iter() {
            if !h.contains(x) {
                h = self.extend(&h, &[x]);
            }
        }
        h
    }

    pub fn conjugacy_classes(&self) -> Vec<Vec<u32>> {
        let mut seen = Bits::new(self.len());
        let mut classes = Vec::new();
        for start in 0..self.len() as u32 {
            if !seen.insert(start) {
                continue;
            }
            let mut class = vec![start];
            let mut k = 0;
            while k < class.len() {
                for s in 0..self.conj.len() {
                    let y = self.conjugate_by_generator(class[k], s);
                    if seen.insert(y) {
                        class.push(y);
                    }
                }
                k += 1;
            }
            class.sort_unstable();
            classes.push(class);
        }
        classes
    }

    pub fn to_group(&self, h: &SubTab) -> FiniteGroup {
        self.group.subgroup(h.gens.iter().map(|&i| self.elements[i as usize].clone()).collect())
    }

    /// Index-space form of a subgroup of `G`.
    pub fn from_group(&self, h: &FiniteGroup) -> Option<SubTab> {
        let gens = h.generators().iter().map(|x| self.index_of(x)).collect::<Option<Vec<_>>>()?;
        Some(self.closure(&gens))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classes_of_s4() {
        let t = Table::new(&FiniteGroup::symmetric(4), &Caps::default(), CapKind::NormalLattice).unwrap();
        let mut sizes: Vec<usize> = t.conjugacy_classes().iter().map(Vec::len).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 3, 6, 6, 8]);
        assert!(t.element(0).is_identity());
    }

    #[test]
    fn closure_and_core() {
        let s4 = FiniteGroup::symmetric(4);
        let t = Table::new(&s4, &Caps::default(), CapKind::Subgroup).unwrap();
        let x = t.index_of(&Perm::parse(4, "(1 2 3)").unwrap()).unwrap();
        assert_eq!(t.normal_closure(&[x]).order, 12);
        let d8 = s4.subgroup(vec![Perm::parse(4, "(1 2 3 4)").unwrap(), Perm::parse(4, "(1 3)").unwrap()]);
        let d8 = t.from_group(&d8).unwrap();
        assert_eq!(d8.order, 8);
        assert_eq!(t.core(&d8).order, 4);
        assert_eq!(t.whole().order, 24);
    }

    #[test]
    fn cap_is_enforced() {
        let caps = Caps { subgroup: 100, ..Caps::default() };
        assert!(Table::new(&FiniteGroup::symmetric(5), &caps, CapKind::Subgroup).is_err());
    }
}
