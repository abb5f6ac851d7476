//! Deterministic Schreier–Sims stabilizer chains.
//!
//! Level `i` stores the generators `S_i` inserted there, the orbit of the
//! base point `b_i` under `<S_i>` and a full transversal. Sifting residues
//! are always inserted one level below the level whose Schreier generator
//! produced them, which keeps `S_{i+1} ⊆ <S_i>`, so each orbit can be
//! computed from the level's own generators.

use std::ops::ControlFlow;

use crate::error::{Error, Result};
use crate::perm::Perm;

const NONE: u32 = u32::MAX;

#[derive(Clone, Debug)]
pub struct Level {
    base: usize,
    gens: Vec<Perm>,
    orbit: Vec<u32>,
    reps: Vec<Perm>,
    inv_reps: Vec<Perm>,
    pos: Vec<u32>,
}

impl Level {
    fn new(degree: usize, base: usize) -> Level {
        let mut pos = vec![NONE; degree];
        pos[base] = 0;
        Level {
            base,
            gens: Vec::new(),
            orbit: vec![base as u32],
            reps: vec![Perm::identity(degree)],
            inv_reps: vec![Perm::identity(degree)],
            pos,
        }
    }

    pub fn base(&self) -> usize {
        self.base
    }

    pub fn orbit(&self) -> &[u32] {
        &self.orbit
    }

    pub fn gens(&self) -> &[Perm] {
        &self.gens
    }

    /// Coset representatives, aligned with [`Level::orbit`]; `reps()[k]` maps
    /// the base point to `orbit()[k]`.
    pub fn reps(&self) -> &[Perm] {
        &self.reps
    }

    #[inline]
    pub fn position(&self, point: usize) -> Option<usize> {
        let p = self.pos[point];
        (p != NONE).then_some(p as usize)
    }

    pub fn rep_of(&self, point: usize) -> Option<&Perm> {
        self.position(point).map(|k| &self.reps[k])
    }

    pub fn inv_rep_of(&self, point: usize) -> Option<&Perm> {
        self.position(point).map(|k| &self.inv_reps[k])
    }
}

#[derive(Clone, Debug)]
pub struct StabChain {
    degree: usize,
    levels: Vec<Level>,
    prefix: Vec<usize>,
}

impl StabChain {
    pub fn new(degree: usize, gens: &[Perm]) -> StabChain {
        StabChain::with_base_prefix(degree, gens, &[])
    }

    /// Builds a chain whose first base points are `prefix`, in order.
    ///
    /// Levels of the prefix whose orbit turns out trivial are dropped once
    /// the chain is complete.
    pub fn with_base_prefix(degree: usize, gens: &[Perm], prefix: &[usize]) -> StabChain {
        let mut chain = StabChain { degree, levels: Vec::new(), prefix: prefix.to_vec() };
        for g in gens {
            chain.add_generator(g);
        }
        chain.levels.retain(|l| l.orbit.len() > 1);
        chain.prefix.clear();
        chain
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }

    /// Adds `g` to the group; returns false if it was already a member.
    pub fn add_generator(&mut self, g: &Perm) -> bool {
        debug_assert_eq!(g.degree(), self.degree);
        let (residue, _) = self.sift(g, 0);
        if residue.is_identity() {
            return false;
        }
        // Insert the original element at the top so that S_0 keeps
        // generating the whole group.
        self.extend(0, g.clone());
        true
    }

    fn extend(&mut self, i: usize, g: Perm) {
        if i == self.levels.len() {
            let base = if i < self.prefix.len() {
                self.prefix[i]
            } else {
                g.first_moved_point().expect("extend called with identity")
            };
            self.levels.push(Level::new(self.degree, base));
        }
        let degree = self.degree;
        let mut schreier = Vec::new();
        {
            let level = &mut self.levels[i];
            level.gens.push(g);
            let new_gen = level.gens.len() - 1;
            let old_len = level.orbit.len();
            // Old points only need the new generator; new points need all.
            let mut k = 0;
            while k < level.orbit.len() {
                let point = level.orbit[k] as usize;
                let gen_range = if k < old_len { new_gen..new_gen + 1 } else { 0..level.gens.len() };
                for s in gen_range {
                    let image = level.gens[s].apply(point);
                    if level.pos[image] == NONE {
                        let rep = level.reps[k].compose(&level.gens[s]);
                        level.pos[image] = level.orbit.len() as u32;
                        level.orbit.push(image as u32);
                        level.inv_reps.push(rep.inverse());
                        level.reps.push(rep);
                    }
                    let target = level.pos[image] as usize;
                    let sg = level.reps[k].compose(&level.gens[s]).compose(&level.inv_reps[target]);
                    if !sg.is_identity() {
                        schreier.push(sg);
                    }
                }
                k += 1;
            }
            debug_assert!(level.orbit.len() <= degree);
        }
        for sg in schreier {
            let (residue, _) = self.sift(&sg, i + 1);
            if !residue.is_identity() {
                self.extend(i + 1, residue);
            }
        }
    }

    /// Sifts `g` through levels `from..`. Returns the residue and the index
    /// of the first level where the base image left the orbit (or the
    /// number of levels if sifting ran to the end).
    pub fn sift(&self, g: &Perm, from: usize) -> (Perm, usize) {
        let mut h = g.clone();
        for (j, level) in self.levels.iter().enumerate().skip(from) {
            let beta = h.apply(level.base);
            if beta == level.base {
                continue;
            }
            match level.inv_rep_of(beta) {
                Some(inv) => h = h.compose(inv),
                None => return (h, j),
            }
        }
        (h, self.levels.len())
    }

    pub fn contains(&self, g: &Perm) -> bool {
        g.degree() == self.degree && self.sift(g, 0).0.is_identity()
    }

    pub fn order(&self) -> Result<u128> {
        self.levels.iter().try_fold(1u128, |acc, l| acc.checked_mul(l.orbit.len() as u128).ok_or(Error::OrderOverflow))
    }

    pub fn strong_generators(&self) -> Vec<Perm> {
        self.levels.iter().flat_map(|l| l.gens.iter().cloned()).collect()
    }

    /// Generators of the stabilizer of the first `depth` base points.
    pub fn stabilizer_generators(&self, depth: usize) -> Vec<Perm> {
        self.levels.iter().skip(depth).flat_map(|l| l.gens.iter().cloned()).collect()
    }

    /// The element whose level-`j` transversal index is `indices[j]`.
    pub fn element_at(&self, indices: &[usize]) -> Perm {
        let mut g = Perm::identity(self.degree);
        for (level, &k) in self.levels.iter().zip(indices).rev() {
            g = g.compose(&level.reps[k]);
        }
        g
    }

    /// Visits every element exactly once in a fixed order. Elements are
    /// written `u_{k-1} ... u_1 u_0` with `u_j` from the level-`j`
    /// transversal; `outer` restricts the deepest-level index when given.
    pub fn visit<B>(&self, outer: Option<usize>, f: &mut impl FnMut(&Perm) -> ControlFlow<B>) -> ControlFlow<B> {
        let depth = self.levels.len();
        if depth == 0 {
            return f(&Perm::identity(self.degree));
        }
        let top = depth - 1;
        let id = Perm::identity(self.degree);
        let range: Vec<usize> = match outer {
            Some(k) => vec![k],
            None => (0..self.levels[top].reps.len()).collect(),
        };
        for k in range {
            let prefix = id.compose(&self.levels[top].reps[k]);
            self.visit_rec(top, &prefix, f)?;
        }
        ControlFlow::Continue(())
    }

    fn visit_rec<B>(&self, level: usize, prefix: &Perm, f: &mut impl FnMut(&Perm) -> ControlFlow<B>) -> ControlFlow<B> {
        if level == 0 {
            return f(prefix);
        }
        for rep in &self.levels[level - 1].reps {
            let next = prefix.compose(rep);
            self.visit_rec(level - 1, &next, f)?;
        }
        ControlFlow::Continue(())
    }

    /// Size of the deepest level's transversal, used to shard enumeration.
    pub fn outer_len(&self) -> usize {
        self.levels.last().map_or(1, |l| l.reps.len())
    }

    pub fn random_element(&self, rng: &mut impl rand::Rng) -> Perm {
        let indices: Vec<usize> = self.levels.iter().map(|l| rng.gen_range(0..l.reps.len())).collect();
        self.element_at(&indices)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(n: usize) -> Vec<Perm> {
        let cycle: Vec<usize> = (0..n).collect();
        vec![Perm::from_cycles(n, &[vec![0, 1]]).unwrap(), Perm::from_cycles(n, &[cycle]).unwrap()]
    }

    #[test]
    fn symmetric_group_orders() {
        for (n, order) in [(2, 2u128), (3, 6), (4, 24), (5, 120), (7, 5040)] {
            let chain = StabChain::new(n, &sym(n));
            assert_eq!(chain.order().unwrap(), order);
        }
    }

    #[test]
    fn enumeration_is_exhaustive_and_distinct() {
        let chain = StabChain::new(5, &sym(5));
        let mut seen = std::collections::HashSet::new();
        let _ = chain.visit::<()>(None, &mut |g| {
            assert!(chain.contains(g));
            seen.insert(g.clone());
            ControlFlow::Continue(())
        });
        assert_eq!(seen.len(), 120);
    }

    #[test]
    fn membership_is_exact() {
        // Alt(4) does not contain transpositions.
        let gens = vec![Perm::parse(4, "(1 2 3)").unwrap(), Perm::parse(4, "(2 3 4)").unwrap()];
        let chain = StabChain::new(4, &gens);
        assert_eq!(chain.order().unwrap(), 12);
        assert!(!chain.contains(&Perm::parse(4, "(1 2)").unwrap()));
        assert!(chain.contains(&Perm::parse(4, "(1 2)(3 4)").unwrap()));
    }

    #[test]
    fn base_prefix_is_respected() {
        let chain = StabChain::with_base_prefix(5, &sym(5), &[4, 3]);
        assert_eq!(&chain.base()[..2], &[4, 3]);
        assert_eq!(chain.order().unwrap(), 120);
    }
}
