//! Stabilizer chain for subgroups of `AGL(m, 2)` acting on the `2^m` points.
//!
//! The base is fixed to `0, e_1, …, e_m`: an affine map is determined by the
//! images of these points, so a residue that survives every level is the
//! identity.

use super::AffineMap;

#[derive(Clone, Debug)]
struct Level {
    base_point: usize,
    /// Indices into `strong` of the generators fixing all earlier base points.
    gens: Vec<usize>,
    orbit: Vec<usize>,
    /// `transversal[p] = (t, t⁻¹)` with `t(base_point) = p`.
    transversal: Vec<Option<(AffineMap, AffineMap)>>,
}

/// Exact order and membership for the subgroup generated by a set of maps.
#[derive(Clone, Debug)]
pub struct SubgroupOracle {
    m: usize,
    strong: Vec<AffineMap>,
    levels: Vec<Level>,
}

impl SubgroupOracle {
    /// The trivial subgroup.
    pub fn new(m: usize) -> Self {
        let n = 1usize << m;
        let id = AffineMap::identity(m);
        let levels = std::iter::once(0)
            .chain((0..m).map(|i| 1usize << i))
            .map(|b| {
                let mut transversal = vec![None; n];
                transversal[b] = Some((id, id));
                Level {
                    base_point: b,
                    gens: Vec::new(),
                    orbit: vec![b],
                    transversal,
                }
            })
            .collect();
        SubgroupOracle {
            m,
            strong: Vec::new(),
            levels,
        }
    }

    pub fn from_generators(m: usize, gens: &[AffineMap]) -> Self {
        let mut oracle = SubgroupOracle::new(m);
        for g in gens {
            oracle.insert(g);
        }
        oracle
    }

    pub fn vars(&self) -> usize {
        self.m
    }

    pub fn order(&self) -> u128 {
        self.levels.iter().map(|l| l.orbit.len() as u128).product()
    }

    pub fn contains(&self, g: &AffineMap) -> bool {
        self.sift(*g, 0).1 == self.levels.len()
    }

    /// Strong generating set built so far.
    pub fn strong_generators(&self) -> &[AffineMap] {
        &self.strong
    }

    /// Adds `g` to the generating set. Returns `false` if it was already a
    /// member, leaving the oracle untouched.
    pub fn insert(&mut self, g: &AffineMap) -> bool {
        assert_eq!(g.vars(), self.m, "variable count mismatch");
        let (h, j) = self.sift(*g, 0);
        if j == self.levels.len() {
            return false;
        }
        self.add_strong(h, j);
        self.complete(j);
        true
    }

    /// Strips `g` through the levels starting at `from`. Returns the residue
    /// and the first level whose transversal misses it (`levels.len()` when
    /// the residue is the identity).
    fn sift(&self, mut g: AffineMap, from: usize) -> (AffineMap, usize) {
        for (i, level) in self.levels.iter().enumerate().skip(from) {
            let p = g.apply(level.base_point);
            match &level.transversal[p] {
                Some((_, inv)) => g = inv.compose(&g),
                None => return (g, i),
            }
        }
        debug_assert!(g.is_identity());
        (g, self.levels.len())
    }

    fn add_strong(&mut self, h: AffineMap, depth: usize) {
        let idx = self.strong.len();
        self.strong.push(h);
        for l in 0..=depth {
            self.levels[l].gens.push(idx);
            self.rebuild_orbit(l);
        }
    }

    fn rebuild_orbit(&mut self, l: usize) {
        let n = 1usize << self.m;
        let id = AffineMap::identity(self.m);
        let level = &mut self.levels[l];
        let b = level.base_point;
        let mut transversal = vec![None; n];
        transversal[b] = Some((id, id));
        let mut orbit = vec![b];
        let mut head = 0;
        while head < orbit.len() {
            let p = orbit[head];
            head += 1;
            let (t, _) = transversal[p].expect("orbit point without transversal");
            for &gi in &level.gens {
                let s = &self.strong[gi];
                let q = s.apply(p);
                if transversal[q].is_none() {
                    let tq = s.compose(&t);
                    transversal[q] = Some((tq, tq.inverse()));
                    orbit.push(q);
                }
            }
        }
        level.orbit = orbit;
        level.transversal = transversal;
    }

    /// Schreier-Sims completion from level `start` upwards to level 0.
    fn complete(&mut self, start: usize) {
        let mut i = start as isize;
        while i >= 0 {
            match self.nonmember_schreier_generator(i as usize) {
                Some((h, j)) => {
                    self.add_strong(h, j);
                    i = j as isize;
                }
                None => i -= 1,
            }
        }
    }

    fn nonmember_schreier_generator(&self, i: usize) -> Option<(AffineMap, usize)> {
        let level = &self.levels[i];
        for &p in &level.orbit {
            let (tp, _) = level.transversal[p].unwrap();
            for &gi in &level.gens {
                let s = &self.strong[gi];
                let q = s.apply(p);
                let (_, tq_inv) = level.transversal[q].unwrap();
                let schreier = tq_inv.compose(&s.compose(&tp));
                let (h, j) = self.sift(schreier, i + 1);
                if j < self.levels.len() {
                    return Some((h, j));
                }
            }
        }
        None
    }
}
