//! Boundary actions of a level-`r` stabilizer on the homogeneous forms of
//! degree `r`, and the two orbit computations built on them.

use std::collections::hash_map::Entry;
use std::collections::{HashMap, HashSet, VecDeque};

use crate::boolean::{binomial, degree_mask, BooleanFunction};
use crate::error::{Error, Result};
use crate::group::{act, AffineMap, SubgroupOracle};

/// Coordinates of a homogeneous form of degree `r`: bit `j` is the
/// coefficient of the `j`-th degree-`r` monomial in increasing mask order.
/// Integer order on forms is the order of their ANF words.
pub type Form = u64;

/// Largest form-space dimension the packed representation holds.
pub const MAX_FORM_DIM: usize = 40;

/// Coordinate systems for `B(r, r, m)`.
#[derive(Clone, Debug)]
pub struct FormSpace {
    m: usize,
    degree: usize,
    basis: Vec<usize>,
    coord_of_mask: Vec<u8>,
}

impl FormSpace {
    pub fn new(m: usize, degree: usize) -> Self {
        let basis: Vec<usize> = (0..1usize << m)
            .filter(|s| s.count_ones() as usize == degree)
            .collect();
        let mut coord_of_mask = vec![u8::MAX; 1 << m];
        for (j, &s) in basis.iter().enumerate() {
            coord_of_mask[s] = j as u8;
        }
        debug_assert_eq!(basis.len() as u64, binomial(m, degree));
        FormSpace {
            m,
            degree,
            basis,
            coord_of_mask,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn size(&self) -> u128 {
        1u128 << self.dim()
    }

    pub fn to_function(&self, u: Form) -> BooleanFunction {
        let anf = self
            .basis
            .iter()
            .enumerate()
            .filter(|(j, _)| (u >> j) & 1 == 1)
            .fold(0u128, |a, (_, &s)| a | 1u128 << s);
        BooleanFunction::from_anf_unchecked(self.m, anf)
    }

    /// Coordinates of the degree-`r` part of `f`.
    pub fn coords(&self, f: &BooleanFunction) -> Form {
        let mut word = f.anf() & degree_mask(self.m, self.degree);
        let mut u = 0;
        while word != 0 {
            let s = word.trailing_zeros() as usize;
            u |= 1 << self.coord_of_mask[s];
            word &= word - 1;
        }
        u
    }
}

/// A GF(2) matrix on forms, applied eight coordinates at a time.
#[derive(Clone, Debug)]
struct FormMatrix {
    tables: Vec<[Form; 256]>,
}

impl FormMatrix {
    fn from_columns(columns: &[Form]) -> Self {
        let tables = columns
            .chunks(8)
            .map(|chunk| {
                let mut t = [0 as Form; 256];
                for (byte, entry) in t.iter_mut().enumerate() {
                    *entry = chunk
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| (byte >> i) & 1 == 1)
                        .fold(0, |a, (_, &c)| a ^ c);
                }
                t
            })
            .collect();
        FormMatrix { tables }
    }

    #[inline]
    fn mul(&self, u: Form) -> Form {
        let mut out = 0;
        for (i, t) in self.tables.iter().enumerate() {
            out ^= t[((u >> (8 * i)) & 0xff) as usize];
        }
        out
    }
}

/// The affine action `u ↦ hom_r(u∘g) + hom_r(f∘g + f)` of each generator
/// `g` of the level-`r` stabilizer of `f` on degree-`r` forms.
#[derive(Clone, Debug)]
pub struct BoundaryAction {
    f: BooleanFunction,
    level: usize,
    space: FormSpace,
    gens: Vec<AffineMap>,
    matrices: Vec<FormMatrix>,
    shifts: Vec<Form>,
}

impl BoundaryAction {
    /// Fails if some generator does not fix `f` modulo `RM(level, m)`.
    pub fn new(f: BooleanFunction, level: usize, gens: &[AffineMap]) -> Result<Self> {
        let m = f.vars();
        let space = FormSpace::new(m, level);
        if space.dim() > MAX_FORM_DIM {
            return Err(Error::invalid(format!(
                "form space of dimension {} exceeds {MAX_FORM_DIM}",
                space.dim()
            )));
        }
        let mut matrices = Vec::with_capacity(gens.len());
        let mut shifts = Vec::with_capacity(gens.len());
        for g in gens {
            let moved = act(&f, g) ^ f;
            if !moved.reduce_mod_rm(level as i32).is_zero() {
                return Err(Error::internal(format!(
                    "{g:?} does not stabilize {f} at level {level}"
                )));
            }
            shifts.push(space.coords(&moved));
            let columns: Vec<Form> = space
                .basis
                .iter()
                .map(|&s| space.coords(&act(&BooleanFunction::monomial(m, s), g)))
                .collect();
            matrices.push(FormMatrix::from_columns(&columns));
        }
        Ok(BoundaryAction {
            f,
            level,
            space,
            gens: gens.to_vec(),
            matrices,
            shifts,
        })
    }

    pub fn function(&self) -> &BooleanFunction {
        &self.f
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn space(&self) -> &FormSpace {
        &self.space
    }

    pub fn generators(&self) -> &[AffineMap] {
        &self.gens
    }

    /// Image of `u` under the `i`-th generator.
    #[inline]
    pub fn apply(&self, u: Form, i: usize) -> Form {
        self.matrices[i].mul(u) ^ self.shifts[i]
    }

    /// Image of `u` under an arbitrary stabilizer element, computed on
    /// functions: the degree-`r` part of `(f + u)∘g + f`.
    pub fn act_element(&self, u: Form, g: &AffineMap) -> Form {
        debug_assert!(
            (act(&self.f, g) ^ self.f)
                .reduce_mod_rm(self.level as i32)
                .is_zero(),
            "element outside the level stabilizer"
        );
        let fu = self.f ^ self.space.to_function(u);
        self.space.coords(&(act(&fu, g) ^ self.f))
    }
}

/// Spec-level name for [`BoundaryAction::act_element`].
pub fn boundary_act(u: Form, g: &AffineMap, ctx: &BoundaryAction) -> Form {
    ctx.act_element(u, g)
}

/// Visited markers for phase-one orbit enumeration.
pub enum VisitedSet {
    Flat(Vec<u64>),
    Sparse(HashSet<Form>),
}

impl VisitedSet {
    pub fn new(dim: usize, flat_max_dim: usize) -> Self {
        if dim <= flat_max_dim {
            let words = (1u64 << dim).div_ceil(64);
            VisitedSet::Flat(vec![0; words as usize])
        } else {
            VisitedSet::Sparse(HashSet::new())
        }
    }

    /// Marks `x`; returns `true` if it was not marked before.
    #[inline]
    pub fn insert(&mut self, x: Form) -> bool {
        match self {
            VisitedSet::Flat(bits) => {
                let (w, b) = ((x >> 6) as usize, x & 63);
                let fresh = bits[w] >> b & 1 == 0;
                bits[w] |= 1 << b;
                fresh
            }
            VisitedSet::Sparse(set) => set.insert(x),
        }
    }

    #[inline]
    pub fn contains(&self, x: Form) -> bool {
        match self {
            VisitedSet::Flat(bits) => bits[(x >> 6) as usize] >> (x & 63) & 1 == 1,
            VisitedSet::Sparse(set) => set.contains(&x),
        }
    }
}

/// One orbit of the boundary action: its smallest form and its size.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Orbit {
    pub seed: Form,
    pub size: u128,
}

/// Partitions all `2^dim` forms into orbits under the generators of `ctx`.
///
/// Forms are scanned in increasing order, so each seed is the smallest
/// member of its orbit.
pub fn orbit_enumerate(ctx: &BoundaryAction, flat_max_dim: usize) -> Vec<Orbit> {
    let dim = ctx.space.dim();
    let mut visited = VisitedSet::new(dim, flat_max_dim);
    let mut stack: Vec<Form> = Vec::new();
    let mut orbits = Vec::new();
    let ngens = ctx.gens.len();
    for x in 0..(1 as Form) << dim {
        if !visited.insert(x) {
            continue;
        }
        let mut size = 0u128;
        stack.push(x);
        while let Some(y) = stack.pop() {
            size += 1;
            for i in 0..ngens {
                let z = ctx.apply(y, i);
                if visited.insert(z) {
                    stack.push(z);
                }
            }
        }
        orbits.push(Orbit { seed: x, size });
    }
    orbits
}

/// Order of the stabilizer of an orbit point: `|G| / |orbit|`.
pub fn stab_order_from_class_formula(parent_order: u128, orbit_size: u128) -> Result<u128> {
    if orbit_size == 0 || !parent_order.is_multiple_of(orbit_size) {
        return Err(Error::internal(format!(
            "orbit size {orbit_size} does not divide group order {parent_order}"
        )));
    }
    Ok(parent_order / orbit_size)
}

/// Orbit of a single form with a Schreier tree: each visited form keeps the
/// form it was reached from and the generator index used.
pub struct OrbitSet {
    m: usize,
    root: Form,
    tree: HashMap<Form, (Form, u32)>,
}

const ROOT: u32 = u32::MAX;

impl OrbitSet {
    pub fn new(m: usize, root: Form) -> Self {
        OrbitSet {
            m,
            root,
            tree: HashMap::from([(root, (root, ROOT))]),
        }
    }

    pub fn root(&self) -> Form {
        self.root
    }

    pub fn len(&self) -> usize {
        self.tree.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tree.is_empty()
    }

    pub fn contains(&self, x: Form) -> bool {
        self.tree.contains_key(&x)
    }

    /// Records `y` as reached from `x` by generator `gen`; `false` if `y`
    /// was already present.
    pub fn insert(&mut self, y: Form, x: Form, gen: usize) -> bool {
        match self.tree.entry(y) {
            Entry::Occupied(_) => false,
            Entry::Vacant(e) => {
                e.insert((x, gen as u32));
                true
            }
        }
    }

    /// The group element `R(x)` with `root∘R(x) = x`, rebuilt by walking the
    /// tree back to the root.
    pub fn word(&self, x: Form, gens: &[AffineMap]) -> AffineMap {
        let mut path = Vec::new();
        let mut cur = x;
        loop {
            let (parent, g) = self.tree[&cur];
            if g == ROOT {
                break;
            }
            path.push(g as usize);
            cur = parent;
        }
        path.iter()
            .rev()
            .fold(AffineMap::identity(self.m), |acc, &g| acc.compose(&gens[g]))
    }
}

/// Generators of the stabilizer of `u` under the boundary action, found by
/// harvesting Schreier generators in breadth-first order until the
/// generated subgroup reaches the known order `target_order`.
pub fn generator_set(u: Form, target_order: u128, ctx: &BoundaryAction) -> Result<Vec<AffineMap>> {
    let gens = ctx.generators();
    let m = ctx.f.vars();
    let mut found = Vec::new();
    let mut oracle = SubgroupOracle::new(m);
    let mut orbit = OrbitSet::new(m, u);
    let mut queue = VecDeque::from([u]);
    while oracle.order() < target_order {
        let x = queue.pop_front().ok_or_else(|| {
            Error::internal(format!(
                "Schreier generators of form {u:#x} span order {} < {target_order}",
                oracle.order()
            ))
        })?;
        let rx = orbit.word(x, gens);
        for (i, lambda) in gens.iter().enumerate() {
            let y = ctx.apply(x, i);
            if orbit.insert(y, x, i) {
                queue.push_back(y);
            } else {
                let s = rx.compose(lambda).compose(&orbit.word(y, gens).inverse());
                if !oracle.contains(&s) {
                    debug_assert_eq!(ctx.act_element(u, &s), u);
                    oracle.insert(&s);
                    found.push(s);
                }
            }
        }
    }
    if oracle.order() != target_order {
        return Err(Error::internal(format!(
            "stabilizer of form {u:#x} has order {} but the class formula gives {target_order}",
            oracle.order()
        )));
    }
    Ok(found)
}
