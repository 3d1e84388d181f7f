//! Deterministic Schreier–Sims stabilizer chain.
//!
//! The base is fixed up front as every point moved by some generator, in
//! ascending order. Levels whose basic orbit is trivial cost one comparison
//! when sifting.

use rustc_hash::FxHashMap;

use crate::perm::Permutation;

#[derive(Debug, Clone)]
struct Level {
    base: u32,
    gens: Vec<Permutation>,
    /// orbit point -> element carrying the base point there
    transversal: FxHashMap<u32, Permutation>,
    orbit: Vec<u32>,
}

impl Level {
    fn new(base: u32, degree: usize) -> Self {
        let mut transversal = FxHashMap::default();
        transversal.insert(base, Permutation::identity(degree));
        Level {
            base,
            gens: Vec::new(),
            transversal,
            orbit: vec![base],
        }
    }

    fn rebuild_orbit(&mut self) {
        let mut i = 0;
        while i < self.orbit.len() {
            let p = self.orbit[i];
            let u = self.transversal[&p].clone();
            for s in &self.gens {
                let q = s.images()[p as usize];
                if let std::collections::hash_map::Entry::Vacant(e) = self.transversal.entry(q) {
                    e.insert(u.compose_unchecked(s));
                    self.orbit.push(q);
                }
            }
            i += 1;
        }
    }
}

#[derive(Debug, Clone)]
pub struct StabilizerChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabilizerChain {
    pub fn new(degree: usize, generators: &[Permutation]) -> Self {
        let mut moved = vec![false; degree];
        for g in generators {
            for (i, &x) in g.images().iter().enumerate() {
                if i as u32 != x {
                    moved[i] = true;
                }
            }
        }
        let levels: Vec<Level> = moved
            .iter()
            .enumerate()
            .filter(|(_, &m)| m)
            .map(|(i, _)| Level::new(i as u32, degree))
            .collect();
        let mut chain = StabilizerChain { degree, levels };
        if chain.levels.is_empty() {
            return chain;
        }
        for g in generators.iter().filter(|g| !g.is_identity()) {
            let (_, depth) = chain.strip(g.clone(), 0);
            // a generator moves some base point; record it on every level it fixes into
            for l in 0..=depth.min(chain.levels.len() - 1) {
                chain.levels[l].gens.push(g.clone());
            }
        }
        for l in &mut chain.levels {
            l.rebuild_orbit();
        }
        chain.complete();
        chain
    }

    /// Sifts `g` starting at level `from`. Returns the residue and the level
    /// where sifting stopped (`levels.len()` when it passed every level).
    fn strip(&self, mut g: Permutation, from: usize) -> (Permutation, usize) {
        for (i, level) in self.levels.iter().enumerate().skip(from) {
            let img = g.images()[level.base as usize];
            if img == level.base {
                continue;
            }
            match level.transversal.get(&img) {
                Some(u) => g = g.compose_unchecked(&u.inverse()),
                None => return (g, i),
            }
        }
        let n = self.levels.len();
        (g, n)
    }

    fn complete(&mut self) {
        let mut i = self.levels.len();
        'outer: while i > 0 {
            let lvl = i - 1;
            let orbit = self.levels[lvl].orbit.clone();
            let gens = self.levels[lvl].gens.clone();
            for &p in &orbit {
                let u = self.levels[lvl].transversal[&p].clone();
                for s in &gens {
                    let q = s.images()[p as usize];
                    let uq = &self.levels[lvl].transversal[&q];
                    let schreier = u.compose_unchecked(s).compose_unchecked(&uq.inverse());
                    let (h, depth) = self.strip(schreier, lvl + 1);
                    if !h.is_identity() {
                        let depth = depth.min(self.levels.len() - 1);
                        for l in lvl + 1..=depth {
                            self.levels[l].gens.push(h.clone());
                            self.levels[l].rebuild_orbit();
                        }
                        i = depth + 1;
                        continue 'outer;
                    }
                }
            }
            i -= 1;
        }
    }

    pub fn order(&self) -> u128 {
        self.levels.iter().map(|l| l.orbit.len() as u128).product()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let (h, _) = self.strip(g.clone(), 0);
        h.is_identity()
    }

    /// Base points (0-based) of levels with a nontrivial basic orbit.
    pub fn base(&self) -> Vec<usize> {
        self.levels
            .iter()
            .filter(|l| l.orbit.len() > 1)
            .map(|l| l.base as usize)
            .collect()
    }
}
