//! Rational polyhedral cones in exact arithmetic.
//!
//! A [`Cone`] always carries both descriptions in canonical form:
//!
//! * V-side: extreme rays (primitive, taken modulo the lineality space by
//!   orthogonal projection) and a reduced-echelon basis of the lineality space;
//! * H-side: facet normals (primitive, taken modulo the equations by
//!   orthogonal projection) and a reduced-echelon basis of the equations.
//!
//! Two cones are equal as sets iff their canonical H-descriptions agree, which
//! is what [`ConeKey`] encodes. Conversion between the two sides is a double
//! description (Motzkin) pass followed by a combinatorial redundancy sweep.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::arith::{dot, kernel_basis, make_primitive, rref_rows, Int, IntMatrix, Rat};
use crate::error::{Error, Result};
use crate::poly::Grading;

/// Largest ambient dimension a [`Face`] can index.
pub const MAX_FACE_AMBIENT: usize = 64;

/// A face of the positive orthant in `Q^r`, given by the set of unit vectors
/// spanning it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Face {
    ambient: usize,
    mask: u64,
}

impl Face {
    pub fn from_indices(ambient: usize, indices: impl IntoIterator<Item = usize>) -> Result<Face> {
        if ambient > MAX_FACE_AMBIENT {
            return Err(Error::TooManyVariables {
                max: MAX_FACE_AMBIENT,
                found: ambient,
            });
        }
        let mut mask = 0u64;
        for i in indices {
            if i >= ambient {
                return Err(Error::DimensionMismatch {
                    expected: ambient,
                    found: i + 1,
                });
            }
            mask |= 1 << i;
        }
        Ok(Face { ambient, mask })
    }

    pub fn from_mask(ambient: usize, mask: u64) -> Face {
        debug_assert!(ambient <= MAX_FACE_AMBIENT);
        debug_assert!(ambient == 64 || mask >> ambient == 0);
        Face { ambient, mask }
    }

    pub fn full(ambient: usize) -> Face {
        let mask = if ambient == 64 {
            u64::MAX
        } else {
            (1u64 << ambient) - 1
        };
        Face::from_mask(ambient, mask)
    }

    pub fn empty(ambient: usize) -> Face {
        Face::from_mask(ambient, 0)
    }

    /// Iterates over all `2^r` faces of the orthant.
    pub fn all(ambient: usize) -> impl Iterator<Item = Face> {
        assert!(ambient < 64, "cannot enumerate 2^{ambient} faces");
        (0..1u64 << ambient).map(move |m| Face::from_mask(ambient, m))
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn contains(&self, i: usize) -> bool {
        i < self.ambient && self.mask >> i & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.ambient).filter(move |&i| self.contains(i))
    }

    pub fn intersect(&self, other: &Face) -> Face {
        Face::from_mask(self.ambient, self.mask & other.mask)
    }

    /// 1-based indices, as used in text output.
    pub fn one_based(&self) -> Vec<usize> {
        self.indices().map(|i| i + 1).collect()
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let idx: Vec<String> = self.one_based().iter().map(|i| i.to_string()).collect();
        write!(f, "{{{}}}", idx.join(","))
    }
}

/// Canonical identifier of a cone as a set.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ConeKey(Arc<str>);

impl ConeKey {
    pub fn as_bytes(&self) -> &[u8] {
        self.0.as_bytes()
    }
}

impl fmt::Display for ConeKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Clone, Debug)]
pub struct Cone {
    ambient: usize,
    rays: Vec<Vec<Int>>,
    lineality: Vec<Vec<Int>>,
    inequalities: Vec<Vec<Int>>,
    equations: Vec<Vec<Int>>,
    key: ConeKey,
}

impl PartialEq for Cone {
    fn eq(&self, other: &Self) -> bool {
        self.key == other.key
    }
}

impl Eq for Cone {}

impl Cone {
    /// Cone spanned by the given vectors.
    pub fn from_generators(ambient: usize, generators: &[Vec<Int>]) -> Result<Cone> {
        check_lengths(ambient, generators)?;
        let gens: Vec<Vec<Int>> = generators
            .iter()
            .filter(|g| g.iter().any(|x| !x.is_zero()))
            .cloned()
            .collect();
        let (dual_rays, equations) = double_description(ambient, &[], &gens);
        let facets = dual_rays;
        let mut stacked = facets.clone();
        stacked.extend(equations.iter().cloned());
        let lineality = kernel_of_rows(ambient, &stacked);
        let rays = irredundant(&gens, &facets);
        Ok(Cone::assemble(ambient, rays, lineality, facets, equations))
    }

    /// Cone `{x : a.x >= 0 for a in inequalities, e.x = 0 for e in equations}`.
    pub fn from_inequalities(
        ambient: usize,
        inequalities: &[Vec<Int>],
        equations: &[Vec<Int>],
    ) -> Result<Cone> {
        check_lengths(ambient, inequalities)?;
        check_lengths(ambient, equations)?;
        let ineqs: Vec<Vec<Int>> = inequalities
            .iter()
            .filter(|a| a.iter().any(|x| !x.is_zero()))
            .cloned()
            .collect();
        let (rays, lineality) = double_description(ambient, equations, &ineqs);
        let mut stacked = rays.clone();
        stacked.extend(lineality.iter().cloned());
        let eqs = kernel_of_rows(ambient, &stacked);
        let facets = irredundant(&ineqs, &rays);
        Ok(Cone::assemble(ambient, rays, lineality, facets, eqs))
    }

    pub fn full_space(ambient: usize) -> Cone {
        Cone::from_inequalities(ambient, &[], &[]).expect("consistent dimensions")
    }

    pub fn zero(ambient: usize) -> Cone {
        Cone::from_generators(ambient, &[]).expect("consistent dimensions")
    }

    pub fn orthant(ambient: usize) -> Cone {
        Cone::from_generators(ambient, &unit_vectors(ambient)).expect("consistent dimensions")
    }

    fn assemble(
        ambient: usize,
        rays: Vec<Vec<Int>>,
        lineality: Vec<Vec<Int>>,
        inequalities: Vec<Vec<Int>>,
        equations: Vec<Vec<Int>>,
    ) -> Cone {
        let lineality = rref_rows(lineality, ambient).rows;
        let equations = rref_rows(equations, ambient).rows;
        let rays = canonical_modulo(rays, &lineality);
        let inequalities = canonical_modulo(inequalities, &equations);
        let key = make_key(ambient, &equations, &inequalities);
        Cone {
            ambient,
            rays,
            lineality,
            inequalities,
            equations,
            key,
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.ambient - self.equations.len()
    }

    pub fn lineality_dim(&self) -> usize {
        self.lineality.len()
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.equations.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_pointed(&self) -> bool {
        self.lineality.is_empty()
    }

    /// Extreme rays modulo the lineality space.
    pub fn rays(&self) -> &[Vec<Int>] {
        &self.rays
    }

    pub fn lineality(&self) -> &[Vec<Int>] {
        &self.lineality
    }

    /// Irredundant facet normals.
    pub fn inequalities(&self) -> &[Vec<Int>] {
        &self.inequalities
    }

    pub fn equations(&self) -> &[Vec<Int>] {
        &self.equations
    }

    pub fn key(&self) -> &ConeKey {
        &self.key
    }

    /// Generators including both signs of every lineality basis vector.
    pub fn generators(&self) -> Vec<Vec<Int>> {
        let mut g = self.rays.clone();
        for l in &self.lineality {
            g.push(l.clone());
            g.push(l.iter().map(|x| -x).collect());
        }
        g
    }

    fn check_dim(&self, len: usize) -> Result<()> {
        if len != self.ambient {
            return Err(Error::DimensionMismatch {
                expected: self.ambient,
                found: len,
            });
        }
        Ok(())
    }

    /// Membership of an integer vector; `strict` asks for the relative interior.
    pub fn contains_int(&self, w: &[Int], strict: bool) -> Result<bool> {
        self.check_dim(w.len())?;
        if self.equations.iter().any(|e| !dot(e, w).is_zero()) {
            return Ok(false);
        }
        Ok(self.inequalities.iter().all(|a| {
            let s = dot(a, w);
            if strict {
                s.is_positive()
            } else {
                !s.is_negative()
            }
        }))
    }

    pub fn contains(&self, w: &[Rat], strict: bool) -> Result<bool> {
        self.check_dim(w.len())?;
        self.contains_int(&clear_denominators(w), strict)
    }

    /// `other` is a subset of `self`.
    pub fn contains_cone(&self, other: &Cone) -> bool {
        if self.ambient != other.ambient {
            return false;
        }
        let in_eqs = |v: &Vec<Int>| self.equations.iter().all(|e| dot(e, v).is_zero());
        other
            .lineality
            .iter()
            .all(|l| in_eqs(l) && self.inequalities.iter().all(|a| dot(a, l).is_zero()))
            && other
                .rays
                .iter()
                .all(|r| in_eqs(r) && self.inequalities.iter().all(|a| !dot(a, r).is_negative()))
    }

    pub fn intersect(&self, other: &Cone) -> Result<Cone> {
        self.check_dim(other.ambient)?;
        let mut ineqs = self.inequalities.clone();
        ineqs.extend(other.inequalities.iter().cloned());
        let mut eqs = self.equations.clone();
        eqs.extend(other.equations.iter().cloned());
        Cone::from_inequalities(self.ambient, &ineqs, &eqs)
    }

    /// The face cut out by the facet normal `normal` (which must be valid on the cone).
    fn face_of_normal(&self, normal: &[Int]) -> Cone {
        let mut gens: Vec<Vec<Int>> = self
            .rays
            .iter()
            .filter(|r| dot(normal, r).is_zero())
            .cloned()
            .collect();
        for l in &self.lineality {
            gens.push(l.clone());
            gens.push(l.iter().map(|x| -x).collect());
        }
        Cone::from_generators(self.ambient, &gens).expect("consistent dimensions")
    }

    /// One cone per facet, in the order of [`Cone::inequalities`].
    pub fn facets(&self) -> Vec<Cone> {
        self.inequalities
            .iter()
            .map(|a| self.face_of_normal(a))
            .collect()
    }

    /// Sum of the canonical extreme rays; lies in the relative interior.
    pub fn relative_interior_point(&self) -> Result<Vec<Rat>> {
        if self.is_zero() {
            return Err(Error::ZeroCone);
        }
        Ok(self
            .interior_sum()
            .into_iter()
            .map(Rat::from_integer)
            .collect())
    }

    fn interior_sum(&self) -> Vec<Int> {
        let mut p = vec![Int::zero(); self.ambient];
        for r in &self.rays {
            for (x, y) in p.iter_mut().zip(r) {
                *x += y;
            }
        }
        p
    }

    /// Smallest face of `self` containing the subset `sub`.
    pub fn minimal_face_containing(&self, sub: &Cone) -> Cone {
        let p = sub.interior_sum();
        let mut eqs = self.equations.clone();
        eqs.extend(
            self.inequalities
                .iter()
                .filter(|a| dot(a, &p).is_zero())
                .cloned(),
        );
        Cone::from_inequalities(self.ambient, &self.inequalities, &eqs)
            .expect("consistent dimensions")
    }

    /// Whether `sub` is a face of `self`.
    pub fn has_face(&self, sub: &Cone) -> bool {
        self.contains_cone(sub) && self.minimal_face_containing(sub).key == sub.key
    }

    /// Whether the sub-cone lies in some facet (i.e. avoids the relative interior).
    pub fn on_boundary(&self, sub: &Cone) -> bool {
        self.inequalities.iter().any(|a| {
            sub.rays.iter().all(|r| dot(a, r).is_zero())
                && sub.lineality.iter().all(|l| dot(a, l).is_zero())
        })
    }
}

impl fmt::Display for Cone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |vs: &[Vec<Int>]| {
            vs.iter()
                .map(|v| {
                    let s: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                    format!("({})", s.join(","))
                })
                .collect::<Vec<_>>()
                .join(" ")
        };
        write!(
            f,
            "cone(dim {}; rays {}; lineality {})",
            self.dim(),
            show(&self.rays),
            show(&self.lineality)
        )
    }
}

/// Facet normal of `lambda` that vanishes on its facet `eta`.
pub fn inner_normal(lambda: &Cone, eta: &Cone) -> Result<Vec<Int>> {
    if eta.dim() + 1 != lambda.dim() || !lambda.contains_cone(eta) {
        return Err(Error::NotAFacet);
    }
    lambda
        .inequalities
        .iter()
        .find(|a| {
            eta.rays.iter().all(|r| dot(a, r).is_zero())
                && eta.lineality.iter().all(|l| dot(a, l).is_zero())
        })
        .cloned()
        .ok_or(Error::NotAFacet)
}

/// Cone over the columns of `Q` indexed by `face`.
pub fn project_face(grading: &Grading, face: &Face) -> Cone {
    let gens: Vec<Vec<Int>> = face.indices().map(|i| grading.column(i)).collect();
    Cone::from_generators(grading.k(), &gens).expect("columns have length k")
}

/// Scales a rational vector by the lcm of its denominators.
pub fn clear_denominators(w: &[Rat]) -> Vec<Int> {
    use num_integer::Integer;
    let mut l = Int::one();
    for x in w {
        l = l.lcm(x.denom());
    }
    w.iter().map(|x| x.numer() * (&l / x.denom())).collect()
}

fn unit_vectors(n: usize) -> Vec<Vec<Int>> {
    (0..n)
        .map(|i| {
            let mut v = vec![Int::zero(); n];
            v[i] = Int::one();
            v
        })
        .collect()
}

fn check_lengths(ambient: usize, vs: &[Vec<Int>]) -> Result<()> {
    match vs.iter().find(|v| v.len() != ambient) {
        Some(v) => Err(Error::DimensionMismatch {
            expected: ambient,
            found: v.len(),
        }),
        None => Ok(()),
    }
}

fn kernel_of_rows(ambient: usize, rows: &[Vec<Int>]) -> Vec<Vec<Int>> {
    let m = IntMatrix::from_rows(ambient, rows).expect("row lengths checked");
    kernel_basis(&m)
}

/// Keeps the candidates whose zero pattern against `against` is maximal,
/// dropping those vanishing on everything. One representative per pattern.
fn irredundant(candidates: &[Vec<Int>], against: &[Vec<Int>]) -> Vec<Vec<Int>> {
    let n = against.len();
    let patterns: Vec<Bits> = candidates
        .iter()
        .map(|c| {
            let mut b = Bits::new(n);
            for (j, a) in against.iter().enumerate() {
                if dot(c, a).is_zero() {
                    b.insert(j);
                }
            }
            b
        })
        .collect();
    let mut out: Vec<Vec<Int>> = Vec::new();
    let mut kept: Vec<&Bits> = Vec::new();
    for (i, zi) in patterns.iter().enumerate() {
        if zi.count() == n {
            continue;
        }
        let dominated = patterns
            .iter()
            .any(|zj| zj.count() < n && zj.count() > zi.count() && zi.is_subset(zj));
        if dominated || kept.contains(&zi) {
            continue;
        }
        kept.push(zi);
        out.push(candidates[i].clone());
    }
    out
}

/// Orthogonal projection onto the complement of `basis` (assumed independent),
/// scaled to primitive integers; sorted and deduplicated.
fn canonical_modulo(vs: Vec<Vec<Int>>, basis: &[Vec<Int>]) -> Vec<Vec<Int>> {
    let mut out: Vec<Vec<Int>> = if basis.is_empty() {
        vs.into_iter()
            .map(|mut v| {
                make_primitive(&mut v);
                v
            })
            .collect()
    } else {
        let proj = Projector::new(basis);
        vs.iter()
            .map(|v| proj.project(v))
            .filter(|v| v.iter().any(|x| !x.is_zero()))
            .collect()
    };
    out.sort();
    out.dedup();
    out
}

/// Integer-scaled orthogonal projection `v -> det(G) v - B^T adj(G) B v`
/// onto the orthogonal complement of the row space of `B`.
struct Projector<'a> {
    basis: &'a [Vec<Int>],
    gram_inv: Vec<Vec<Rat>>,
}

impl<'a> Projector<'a> {
    fn new(basis: &'a [Vec<Int>]) -> Self {
        let n = basis.len();
        // Gauss-Jordan inverse of the Gram matrix
        let mut a: Vec<Vec<Rat>> = (0..n)
            .map(|i| {
                let mut row: Vec<Rat> = (0..n)
                    .map(|j| Rat::from_integer(dot(&basis[i], &basis[j])))
                    .collect();
                row.extend((0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }));
                row
            })
            .collect();
        for c in 0..n {
            let p = (c..n)
                .find(|&i| !a[i][c].is_zero())
                .expect("Gram matrix is invertible");
            a.swap(c, p);
            let inv = a[c][c].recip();
            for x in a[c].iter_mut() {
                *x = &*x * &inv;
            }
            for i in 0..n {
                if i != c && !a[i][c].is_zero() {
                    let f = a[i][c].clone();
                    for j in 0..2 * n {
                        let s = &f * &a[c][j];
                        a[i][j] -= s;
                    }
                }
            }
        }
        let gram_inv = a.into_iter().map(|row| row[n..].to_vec()).collect();
        Projector { basis, gram_inv }
    }

    fn project(&self, v: &[Int]) -> Vec<Int> {
        let bv: Vec<Rat> = self
            .basis
            .iter()
            .map(|b| Rat::from_integer(dot(b, v)))
            .collect();
        if bv.iter().all(|x| x.is_zero()) {
            let mut out = v.to_vec();
            make_primitive(&mut out);
            return out;
        }
        let coeffs: Vec<Rat> = self
            .gram_inv
            .iter()
            .map(|row| row.iter().zip(&bv).map(|(a, b)| a * b).sum())
            .collect();
        let mut out: Vec<Rat> = v.iter().map(|x| Rat::from_integer(x.clone())).collect();
        for (c, b) in coeffs.iter().zip(self.basis) {
            if c.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(b) {
                *o -= c * Rat::from_integer(x.clone());
            }
        }
        let mut ints = clear_denominators(&out);
        make_primitive(&mut ints);
        ints
    }
}

fn make_key(ambient: usize, equations: &[Vec<Int>], inequalities: &[Vec<Int>]) -> ConeKey {
    use std::fmt::Write;
    let mut s = String::new();
    let _ = write!(s, "{ambient}");
    for (tag, group) in [('E', equations), ('I', inequalities)] {
        s.push(tag);
        for v in group {
            s.push('[');
            for (i, x) in v.iter().enumerate() {
                if i > 0 {
                    s.push(',');
                }
                let _ = write!(s, "{x}");
            }
            s.push(']');
        }
    }
    ConeKey(Arc::from(s))
}

/// Fixed-size bit set used for zero patterns.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(n: usize) -> Bits {
        Bits(vec![0; n.div_ceil(64)])
    }

    fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn is_subset(&self, other: &Bits) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }

    fn and(&self, other: &Bits) -> Bits {
        Bits(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }
}

struct DdRay {
    v: Vec<Int>,
    zeros: Bits,
}

/// Double description: generators of `{x : E x = 0, A x >= 0}` as
/// (extreme rays modulo lineality, lineality basis).
fn double_description(
    ambient: usize,
    equations: &[Vec<Int>],
    inequalities: &[Vec<Int>],
) -> (Vec<Vec<Int>>, Vec<Vec<Int>>) {
    let mut lin = unit_vectors(ambient);
    for e in equations {
        if let Some(pi) = lin.iter().position(|l| !dot(e, l).is_zero()) {
            let l = lin.swap_remove(pi);
            let s = dot(e, &l);
            for lj in lin.iter_mut() {
                let t = dot(e, lj);
                if !t.is_zero() {
                    eliminate(lj, &s, &t, &l);
                }
            }
        }
    }

    let n = inequalities.len();
    let mut rays: Vec<DdRay> = Vec::new();
    for (idx, a) in inequalities.iter().enumerate() {
        if let Some(pi) = lin.iter().position(|l| !dot(a, l).is_zero()) {
            let mut l = lin.swap_remove(pi);
            let mut s = dot(a, &l);
            if s.is_negative() {
                for x in l.iter_mut() {
                    *x = -std::mem::take(x);
                }
                s = -s;
            }
            for lj in lin.iter_mut() {
                let t = dot(a, lj);
                if !t.is_zero() {
                    eliminate(lj, &s, &t, &l);
                }
            }
            for r in rays.iter_mut() {
                let t = dot(a, &r.v);
                if !t.is_zero() {
                    eliminate(&mut r.v, &s, &t, &l);
                }
                r.zeros.insert(idx);
            }
            let mut zeros = Bits::new(n);
            for j in 0..idx {
                zeros.insert(j);
            }
            rays.push(DdRay { v: l, zeros });
            continue;
        }

        let values: Vec<Int> = rays.iter().map(|r| dot(a, &r.v)).collect();
        if values.iter().all(|v| !v.is_negative()) {
            for (r, v) in rays.iter_mut().zip(&values) {
                if v.is_zero() {
                    r.zeros.insert(idx);
                }
            }
            continue;
        }
        let pos: Vec<usize> = (0..rays.len())
            .filter(|&i| values[i].is_positive())
            .collect();
        let neg: Vec<usize> = (0..rays.len())
            .filter(|&i| values[i].is_negative())
            .collect();
        let mut fresh = Vec::new();
        for &p in &pos {
            for &q in &neg {
                let common = rays[p].zeros.and(&rays[q].zeros);
                let adjacent = !rays
                    .iter()
                    .enumerate()
                    .any(|(i, r)| i != p && i != q && common.is_subset(&r.zeros));
                if !adjacent {
                    continue;
                }
                let mut v: Vec<Int> = rays[q]
                    .v
                    .iter()
                    .zip(&rays[p].v)
                    .map(|(xq, xp)| &values[p] * xq - &values[q] * xp)
                    .collect();
                make_primitive(&mut v);
                let mut zeros = common;
                zeros.insert(idx);
                fresh.push(DdRay { v, zeros });
            }
        }
        let mut next = Vec::with_capacity(rays.len() + fresh.len());
        for (mut r, v) in rays.into_iter().zip(values) {
            if v.is_negative() {
                continue;
            }
            if v.is_zero() {
                r.zeros.insert(idx);
            }
            next.push(r);
        }
        next.extend(fresh);
        rays = next;
    }
    (rays.into_iter().map(|r| r.v).collect(), lin)
}

// v <- s*v - t*l, made primitive
fn eliminate(v: &mut [Int], s: &Int, t: &Int, l: &[Int]) {
    for (x, y) in v.iter_mut().zip(l) {
        *x = s * &*x - t * y;
    }
    make_primitive(v);
}

/// Deduplicated set of cones sharing an ambient space.
#[derive(Clone, Debug, Default)]
pub struct Fan {
    ambient: usize,
    cones: Vec<Cone>,
    index: HashMap<ConeKey, usize>,
}

impl Fan {
    pub fn new(ambient: usize) -> Fan {
        Fan {
            ambient,
            cones: Vec::new(),
            index: HashMap::new(),
        }
    }

    pub fn from_cones(ambient: usize, cones: impl IntoIterator<Item = Cone>) -> Result<Fan> {
        let mut fan = Fan::new(ambient);
        for c in cones {
            fan.insert(c)?;
        }
        Ok(fan)
    }

    /// Inserts unless an equal cone is present; returns whether it was new.
    pub fn insert(&mut self, cone: Cone) -> Result<bool> {
        if cone.ambient() != self.ambient {
            return Err(Error::DimensionMismatch {
                expected: self.ambient,
                found: cone.ambient(),
            });
        }
        if self.index.contains_key(cone.key()) {
            return Ok(false);
        }
        self.index.insert(cone.key().clone(), self.cones.len());
        self.cones.push(cone);
        Ok(true)
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn cones(&self) -> &[Cone] {
        &self.cones
    }

    pub fn len(&self) -> usize {
        self.cones.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cones.is_empty()
    }

    pub fn contains_key(&self, key: &ConeKey) -> bool {
        self.index.contains_key(key)
    }

    pub fn get(&self, key: &ConeKey) -> Option<&Cone> {
        self.index.get(key).map(|&i| &self.cones[i])
    }

    pub fn keys(&self) -> Vec<ConeKey> {
        let mut k: Vec<ConeKey> = self.index.keys().cloned().collect();
        k.sort();
        k
    }

    /// Cones sorted by key, for output that does not depend on discovery order.
    pub fn sorted(&self) -> Fan {
        let mut cones = self.cones.clone();
        cones.sort_by(|a, b| a.key().cmp(b.key()));
        Fan::from_cones(self.ambient, cones).expect("same ambient")
    }

    pub fn to_json(&self) -> FanJson {
        let mut rays: Vec<Vec<Int>> = self.cones.iter().flat_map(|c| c.rays().to_vec()).collect();
        rays.sort();
        rays.dedup();
        let lineality = self
            .cones
            .first()
            .map(|c| c.lineality().to_vec())
            .unwrap_or_default();
        let maximal_cones = self
            .cones
            .iter()
            .map(|c| {
                c.rays()
                    .iter()
                    .map(|r| rays.binary_search(r).expect("ray collected above"))
                    .collect()
            })
            .collect();
        FanJson {
            ambient: self.ambient,
            rays: rays.iter().map(|v| ints_to_json(v)).collect(),
            lineality: lineality.iter().map(|v| ints_to_json(v)).collect(),
            maximal_cones,
        }
    }

    pub fn from_json(json: &FanJson) -> Result<Fan> {
        let rays: Vec<Vec<Int>> = json
            .rays
            .iter()
            .map(|v| json_to_ints(v))
            .collect::<Result<_>>()?;
        let lineality: Vec<Vec<Int>> = json
            .lineality
            .iter()
            .map(|v| json_to_ints(v))
            .collect::<Result<_>>()?;
        let mut fan = Fan::new(json.ambient);
        for idx in &json.maximal_cones {
            let mut gens = Vec::new();
            for &i in idx {
                let r = rays
                    .get(i)
                    .ok_or_else(|| Error::Internal(format!("ray index {i} out of range")))?;
                gens.push(r.clone());
            }
            for l in &lineality {
                gens.push(l.clone());
                gens.push(l.iter().map(|x| -x).collect());
            }
            fan.insert(Cone::from_generators(json.ambient, &gens)?)?;
        }
        Ok(fan)
    }
}

/// Serialized fan: shared primitive rays, the common lineality space, and one
/// list of ray indices per maximal cone.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FanJson {
    pub ambient: usize,
    pub rays: Vec<Vec<Value>>,
    pub lineality: Vec<Vec<Value>>,
    pub maximal_cones: Vec<Vec<usize>>,
}

impl Cone {
    pub fn to_json(&self) -> FanJson {
        Fan::from_cones(self.ambient, [self.clone()])
            .expect("same ambient")
            .to_json()
    }
}

fn ints_to_json(v: &[Int]) -> Vec<Value> {
    use num_traits::ToPrimitive;
    v.iter()
        .map(|x| match x.to_i64() {
            Some(i) => Value::from(i),
            None => Value::from(x.to_string()),
        })
        .collect()
}

fn json_to_ints(v: &[Value]) -> Result<Vec<Int>> {
    v.iter()
        .map(|x| match x {
            Value::Number(n) => n
                .as_i64()
                .map(Int::from)
                .ok_or_else(|| Error::Internal(format!("non-integer entry {n}"))),
            Value::String(s) => s
                .parse::<Int>()
                .map_err(|_| Error::Internal(format!("malformed integer {s}"))),
            other => Err(Error::Internal(format!("unexpected entry {other}"))),
        })
        .collect()
}
