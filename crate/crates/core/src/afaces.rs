//! Deciding which faces of the orthant are a-faces, and which cones are
//! projected a-faces (orbit cones).

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{hnf, primitive, snf, solve_affine, Int, IntMatrix, Rat, RatMatrix};
use crate::cone::{project_face, Cone, ConeKey, Face};
use crate::error::{Error, Result};
use crate::groebner::radical_membership;
use crate::poly::{
    apply_permutation, exponent_offsets, restrict_and_compress, restrict_to_face, Grading, Ideal,
    Monomial, Permutation, Polynomial,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    QuickReject,
    Linear,
    Reduced,
    Naive,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::QuickReject => "quick-reject",
            Method::Linear => "linear",
            Method::Reduced => "reduced",
            Method::Naive => "naive",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AfaceReport {
    pub face: Face,
    pub is_aface: bool,
    pub method: Method,
    pub groebner_calls: usize,
    /// Shape of the projection matrix `P` (0 x 0 when not reached).
    pub matrix_rows: usize,
    pub matrix_cols: usize,
}

/// Some generator restricts to a single term, so `face` is not an a-face.
pub fn quick_reject(ideal: &Ideal, face: &Face) -> bool {
    ideal
        .generators()
        .iter()
        .any(|g| restrict_to_face(g, face).is_term())
}

/// `prod_{i in face} T_i` is not in the radical of the restricted ideal.
pub fn aface_test_naive(ideal: &Ideal, face: &Face) -> bool {
    let gens: Vec<Polynomial> = ideal
        .generators()
        .iter()
        .map(|g| restrict_to_face(g, face))
        .filter(|g| !g.is_zero())
        .collect();
    let f = Polynomial::variable_product(ideal.nvars(), face.indices());
    !radical_membership(&f, &gens)
}

/// Nonzero HNF rows of the stacked exponent offset matrices of `gens`.
pub fn projection_matrix(gens: &[Polynomial]) -> Result<IntMatrix> {
    let cols = gens.first().map_or(0, |g| g.nvars());
    let mut rows: Vec<Vec<Int>> = Vec::new();
    for g in gens {
        if g.nvars() != cols {
            return Err(Error::DimensionMismatch {
                expected: cols,
                found: g.nvars(),
            });
        }
        rows.extend(exponent_offsets(g)?.row_vecs());
    }
    let stacked = IntMatrix::from_rows(cols, &rows)?;
    let (h, _) = hnf(&stacked);
    let nonzero: Vec<Vec<Int>> = (0..h.rows())
        .filter(|&i| !h.is_zero_row(i))
        .map(|i| h.row(i).to_vec())
        .collect();
    IntMatrix::from_rows(cols, &nonzero)
}

/// Push-forward of `g` along the torus homomorphism given by `p`:
/// a polynomial `h` in `p.rows()` variables with `h(t^p) = t^mu * g(t)`.
pub fn pushforward(p: &IntMatrix, g: &Polynomial) -> Result<Polynomial> {
    if p.cols() != g.nvars() {
        return Err(Error::DimensionMismatch {
            expected: p.cols(),
            found: g.nvars(),
        });
    }
    let n = p.rows();
    let offsets = exponent_offsets(g)?;
    let coeffs: Vec<Rat> = g.terms().iter().map(|(_, c)| c.clone()).collect();
    let m = offsets.rows();
    if m == 0 {
        return Ok(Polynomial::constant(n, coeffs[0].clone()));
    }
    let (d, u, v) = snf(p);
    if (0..n).any(|i| d[(i, i)].is_zero()) {
        return Err(Error::Internal(
            "projection matrix is not of full row rank".into(),
        ));
    }
    // B = P_g * V * sigma * U
    let pgv = offsets.mul(&v)?;
    let mut c = IntMatrix::zeros(m, n);
    for i in 0..m {
        for j in 0..pgv.cols() {
            let x = &pgv[(i, j)];
            if j >= n {
                if !x.is_zero() {
                    return Err(Error::NonIntegralPushforward);
                }
                continue;
            }
            let dj = &d[(j, j)];
            if !(x % dj).is_zero() {
                return Err(Error::NonIntegralPushforward);
            }
            c[(i, j)] = x / dj;
        }
    }
    let b = c.mul(&u)?;
    if b.mul(p)? != offsets {
        return Err(Error::NonIntegralPushforward);
    }
    let mut shift = vec![Int::zero(); n];
    for i in 0..m {
        for (j, s) in shift.iter_mut().enumerate() {
            if -&b[(i, j)] > *s {
                *s = -&b[(i, j)];
            }
        }
    }
    let to_mono = |row: Option<usize>| -> Result<Monomial> {
        let e: Vec<u32> = (0..n)
            .map(|j| {
                let x = match row {
                    Some(i) => &b[(i, j)] + &shift[j],
                    None => shift[j].clone(),
                };
                u32::try_from(&x).map_err(|_| Error::Internal("exponent overflow".into()))
            })
            .collect::<Result<_>>()?;
        Ok(Monomial::new(e))
    };
    let mut terms = vec![(to_mono(None)?, coeffs[0].clone())];
    for i in 0..m {
        terms.push((to_mono(Some(i))?, coeffs[i + 1].clone()));
    }
    Ok(Polynomial::from_terms(n, terms))
}

/// Decides torus solvability when every polynomial is affine-linear;
/// `None` when some polynomial is not.
pub fn linear_solve_test(pushed: &[Polynomial]) -> Option<bool> {
    let Some(first) = pushed.first() else {
        return Some(true);
    };
    let n = first.nvars();
    if pushed
        .iter()
        .any(|g| g.terms().iter().any(|(m, _)| m.degree() > 1))
    {
        return None;
    }
    let mut a = RatMatrix::zeros(pushed.len(), n);
    let mut b = vec![Rat::zero(); pushed.len()];
    for (i, g) in pushed.iter().enumerate() {
        for (m, c) in g.terms() {
            match m.exponents().iter().position(|&e| e == 1) {
                Some(j) => a[(i, j)] = c.clone(),
                None => b[i] = -c.clone(),
            }
        }
    }
    let Some(sol) = solve_affine(&a, &b).expect("dimensions agree") else {
        return Some(false);
    };
    let vanishing =
        (0..n).any(|j| sol.particular[j].is_zero() && sol.kernel.iter().all(|k| k[j].is_zero()));
    Some(!vanishing)
}

/// The reduced test with a record of how it was decided.
pub fn aface_report(ideal: &Ideal, face: &Face) -> Result<AfaceReport> {
    let mut report = AfaceReport {
        face: *face,
        is_aface: true,
        method: Method::Reduced,
        groebner_calls: 0,
        matrix_rows: 0,
        matrix_cols: 0,
    };
    let gens: Vec<Polynomial> = ideal
        .generators()
        .iter()
        .map(|g| restrict_and_compress(g, face))
        .filter(|g| !g.is_zero())
        .collect();
    if gens.is_empty() {
        return Ok(report);
    }
    if gens.iter().any(|g| g.is_term()) {
        report.is_aface = false;
        report.method = Method::QuickReject;
        return Ok(report);
    }
    let p = projection_matrix(&gens)?;
    report.matrix_rows = p.rows();
    report.matrix_cols = p.cols();
    let pushed: Vec<Polynomial> = gens
        .iter()
        .map(|g| pushforward(&p, g))
        .collect::<Result<_>>()
        .map_err(|e| match e {
            Error::NonIntegralPushforward => {
                Error::Internal("push-forward along the reduction is not integral".into())
            }
            other => other,
        })?;
    if let Some(answer) = linear_solve_test(&pushed) {
        report.is_aface = answer;
        report.method = Method::Linear;
        return Ok(report);
    }
    let n = p.rows();
    let product = Polynomial::variable_product(n, 0..n);
    report.groebner_calls = 1;
    report.is_aface = !radical_membership(&product, &pushed);
    Ok(report)
}

pub fn aface_test_reduced(ideal: &Ideal, face: &Face) -> Result<bool> {
    Ok(aface_report(ideal, face)?.is_aface)
}

fn normalized(f: &Polynomial) -> Polynomial {
    match f.terms().first() {
        Some((_, c)) => f.scale(&c.recip()),
        None => f.clone(),
    }
}

/// Extends `sigma` by sign flips `T_j -> -T_j` so that it maps the generator
/// set of `ideal` to itself up to nonzero scalars; `None` if no signs work.
pub fn resolve_signs(ideal: &Ideal, sigma: &Permutation) -> Option<Permutation> {
    let r = ideal.nvars();
    if sigma.len() != r {
        return None;
    }
    let support = |f: &Polynomial| -> Vec<Vec<u32>> {
        f.terms()
            .iter()
            .map(|(m, _)| m.exponents().to_vec())
            .collect()
    };
    let mut by_support: HashMap<Vec<Vec<u32>>, &Polynomial> = HashMap::new();
    for g in ideal.generators() {
        by_support.entry(support(g)).or_insert(g);
    }
    // rows of a GF(2) system: (variable mask, right-hand side)
    let mut rows: Vec<(u64, bool)> = Vec::new();
    for g in ideal.generators() {
        let image = apply_permutation(g, sigma);
        let h = by_support.get(&support(&image))?;
        let ratios: Vec<Rat> = image
            .terms()
            .iter()
            .zip(h.terms())
            .map(|((_, a), (_, b))| a / b)
            .collect();
        let (m0, _) = &image.terms()[0];
        for ((m, _), q) in image.terms().iter().zip(&ratios).skip(1) {
            if q.abs() != ratios[0].abs() {
                return None;
            }
            let mask = (0..r)
                .filter(|&j| (m.exponents()[j] + m0.exponents()[j]) % 2 == 1)
                .fold(0u64, |acc, j| acc | 1 << j);
            rows.push((mask, q.is_negative() != ratios[0].is_negative()));
        }
    }
    let flips = solve_gf2(rows)?;
    let negated = (0..r)
        .map(|i| sigma.is_negated(i) ^ (flips >> sigma.image(i) & 1 == 1))
        .collect();
    Permutation::with_signs(sigma.images().to_vec(), negated).ok()
}

fn solve_gf2(mut rows: Vec<(u64, bool)>) -> Option<u64> {
    let mut pivots: Vec<(u32, usize)> = Vec::new();
    let mut next = 0;
    for bit in 0..64u32 {
        let Some(p) = (next..rows.len()).find(|&i| rows[i].0 >> bit & 1 == 1) else {
            continue;
        };
        rows.swap(next, p);
        let (mask, rhs) = rows[next];
        for (i, row) in rows.iter_mut().enumerate() {
            if i != next && row.0 >> bit & 1 == 1 {
                row.0 ^= mask;
                row.1 ^= rhs;
            }
        }
        pivots.push((bit, next));
        next += 1;
    }
    if rows[next..].iter().any(|&(_, rhs)| rhs) {
        return None;
    }
    Some(
        pivots
            .into_iter()
            .filter(|&(_, i)| rows[i].1)
            .fold(0, |acc, (bit, _)| acc | 1 << bit),
    )
}

/// Checks that every permutation, after suitable sign flips of the
/// variables, maps the generator set to itself up to nonzero scalars.
pub fn validate_symmetries(ideal: &Ideal, symmetries: &[Permutation]) -> Result<()> {
    let gens: HashSet<String> = ideal
        .generators()
        .iter()
        .map(|g| normalized(g).to_string())
        .collect();
    for (i, sigma) in symmetries.iter().enumerate() {
        if sigma.len() != ideal.nvars() {
            return Err(Error::InvalidSymmetry(format!(
                "permutation {} acts on {} variables, the ideal has {}",
                i + 1,
                sigma.len(),
                ideal.nvars()
            )));
        }
        let signed = resolve_signs(ideal, sigma).unwrap_or_else(|| sigma.clone());
        for g in ideal.generators() {
            let image = normalized(&apply_permutation(g, &signed));
            if !gens.contains(&image.to_string()) {
                return Err(Error::InvalidSymmetry(format!(
                    "permutation {} maps {g} outside the generator set",
                    i + 1
                )));
            }
        }
    }
    Ok(())
}

/// All faces in the orbit of `face` under the group generated by `symmetries`.
pub fn face_orbit(face: &Face, symmetries: &[Permutation]) -> Vec<Face> {
    let mut seen: HashSet<u64> = HashSet::from([face.mask()]);
    let mut queue = VecDeque::from([*face]);
    let mut out = Vec::new();
    while let Some(f) = queue.pop_front() {
        out.push(f);
        for s in symmetries {
            let g = s.apply_face(&f);
            if seen.insert(g.mask()) {
                queue.push_back(g);
            }
        }
    }
    out.sort();
    out
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MethodCounts {
    pub quick_reject: usize,
    pub linear: usize,
    pub reduced: usize,
    pub naive: usize,
}

impl MethodCounts {
    pub fn record(&mut self, method: Method) {
        match method {
            Method::QuickReject => self.quick_reject += 1,
            Method::Linear => self.linear += 1,
            Method::Reduced => self.reduced += 1,
            Method::Naive => self.naive += 1,
        }
    }

    pub fn total(&self) -> usize {
        self.quick_reject + self.linear + self.reduced + self.naive
    }
}

#[derive(Clone, Debug)]
pub struct AfaceEnumeration {
    pub faces: Vec<Face>,
    pub tests: MethodCounts,
    pub orbits: usize,
}

/// All a-faces among the `2^r` faces; one test per symmetry orbit.
pub fn enumerate_afaces(ideal: &Ideal, symmetries: &[Permutation]) -> Result<AfaceEnumeration> {
    validate_symmetries(ideal, symmetries)?;
    let r = ideal.nvars();
    if r >= 32 {
        return Err(Error::TooManyVariables { max: 31, found: r });
    }
    let mut seen = vec![false; 1 << r];
    let mut orbits: Vec<Vec<Face>> = Vec::new();
    for mask in 0..1u64 << r {
        if seen[mask as usize] {
            continue;
        }
        let orbit = face_orbit(&Face::from_mask(r, mask), symmetries);
        for f in &orbit {
            seen[f.mask() as usize] = true;
        }
        orbits.push(orbit);
    }
    let reports: Vec<AfaceReport> = orbits
        .par_iter()
        .map(|orbit| {
            let rep = &orbit[0];
            if quick_reject(ideal, rep) {
                Ok(AfaceReport {
                    face: *rep,
                    is_aface: false,
                    method: Method::QuickReject,
                    groebner_calls: 0,
                    matrix_rows: 0,
                    matrix_cols: 0,
                })
            } else {
                aface_report(ideal, rep)
            }
        })
        .collect::<Result<_>>()?;
    let mut tests = MethodCounts::default();
    let mut faces = Vec::new();
    for (orbit, report) in orbits.iter().zip(&reports) {
        tests.record(report.method);
        if report.is_aface {
            faces.extend(orbit.iter().copied());
        }
    }
    faces.sort_by_key(|f| (f.len(), f.mask()));
    Ok(AfaceEnumeration {
        faces,
        tests,
        orbits: orbits.len(),
    })
}

/// Memoized a-face test; each orbit representative is decided exactly once.
pub struct AfaceOracle {
    ideal: Ideal,
    symmetries: Vec<Permutation>,
    verdicts: Mutex<HashMap<u64, Arc<OnceLock<Result<bool>>>>>,
    counts: Mutex<MethodCounts>,
}

impl AfaceOracle {
    pub fn new(ideal: Ideal) -> AfaceOracle {
        AfaceOracle {
            ideal,
            symmetries: Vec::new(),
            verdicts: Mutex::new(HashMap::new()),
            counts: Mutex::new(MethodCounts::default()),
        }
    }

    pub fn with_symmetries(ideal: Ideal, symmetries: Vec<Permutation>) -> Result<AfaceOracle> {
        validate_symmetries(&ideal, &symmetries)?;
        let mut oracle = AfaceOracle::new(ideal);
        oracle.symmetries = symmetries;
        Ok(oracle)
    }

    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    fn representative(&self, face: &Face) -> Face {
        if self.symmetries.is_empty() {
            *face
        } else {
            face_orbit(face, &self.symmetries)[0]
        }
    }

    pub fn is_aface(&self, face: &Face) -> Result<bool> {
        let rep = self.representative(face);
        let cell = self
            .verdicts
            .lock()
            .expect("verdict cache poisoned")
            .entry(rep.mask())
            .or_default()
            .clone();
        let verdict = cell.get_or_init(|| {
            let report = if quick_reject(&self.ideal, &rep) {
                Ok((false, Method::QuickReject))
            } else {
                aface_report(&self.ideal, &rep).map(|r| (r.is_aface, r.method))
            };
            report.map(|(answer, method)| {
                self.counts.lock().expect("counter poisoned").record(method);
                answer
            })
        });
        match verdict {
            Ok(b) => Ok(*b),
            Err(e) => Err(Error::Internal(e.to_string())),
        }
    }

    pub fn counts(&self) -> MethodCounts {
        self.counts.lock().expect("counter poisoned").clone()
    }

    pub fn tests_run(&self) -> usize {
        self.counts().total()
    }
}

/// A projected a-face with one a-face mapping onto it.
#[derive(Clone, Debug)]
pub struct OrbitCone {
    pub cone: Cone,
    pub witness: Face,
}

type WitnessCell = Arc<OnceLock<Result<Option<Face>>>>;

/// Decides whether cones are projected a-faces, caching per cone.
pub struct OrbitConeOracle {
    grading: Grading,
    afaces: AfaceOracle,
    cache: Mutex<HashMap<ConeKey, WitnessCell>>,
}

impl OrbitConeOracle {
    pub fn new(grading: Grading, afaces: AfaceOracle) -> OrbitConeOracle {
        OrbitConeOracle {
            grading,
            afaces,
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn grading(&self) -> &Grading {
        &self.grading
    }

    pub fn afaces(&self) -> &AfaceOracle {
        &self.afaces
    }

    /// An a-face `f` with `Q(f) = cone`, trying faces by (size, index set).
    pub fn witness(&self, cone: &Cone) -> Result<Option<Face>> {
        let cell = self
            .cache
            .lock()
            .expect("orbit cone cache poisoned")
            .entry(cone.key().clone())
            .or_default()
            .clone();
        let result = cell.get_or_init(|| self.search_witness(cone));
        match result {
            Ok(w) => Ok(*w),
            Err(e) => Err(Error::Internal(e.to_string())),
        }
    }

    pub fn is_orbit_cone(&self, cone: &Cone) -> Result<bool> {
        Ok(self.witness(cone)?.is_some())
    }

    fn search_witness(&self, cone: &Cone) -> Result<Option<Face>> {
        let r = self.grading.r();
        let inside: Vec<usize> = (0..r)
            .filter(|&i| {
                cone.contains_int(&self.grading.column(i), false)
                    .expect("column length is k")
            })
            .collect();
        if inside.len() > 30 {
            return Err(Error::TooManyVariables {
                max: 30,
                found: inside.len(),
            });
        }
        let spans = spanning_test(&self.grading, cone, &inside);
        let s = inside.len();
        for size in 0..=s {
            for local in combinations(s, size) {
                if !spans(local) {
                    continue;
                }
                let face = Face::from_indices(
                    r,
                    (0..s).filter(|b| local >> b & 1 == 1).map(|b| inside[b]),
                )?;
                if self.afaces.is_aface(&face)? {
                    return Ok(Some(face));
                }
            }
        }
        Ok(None)
    }
}

/// Predicate on subsets (bit masks over `inside`) telling whether the
/// columns span exactly `cone`.
fn spanning_test<'a>(
    grading: &'a Grading,
    cone: &'a Cone,
    inside: &'a [usize],
) -> Box<dyn Fn(u64) -> bool + 'a> {
    if cone.is_pointed() {
        // a subset spans the cone iff it hits every extreme ray
        let ray_bits: Vec<u64> = inside
            .iter()
            .map(|&i| {
                let col = grading.column(i);
                match primitive(&col) {
                    Ok(p) => cone
                        .rays()
                        .iter()
                        .position(|ray| *ray == p)
                        .map_or(0, |j| 1u64 << j),
                    Err(_) => 0,
                }
            })
            .collect();
        let nrays = cone.rays().len();
        let all = if nrays == 64 {
            u64::MAX
        } else {
            (1u64 << nrays) - 1
        };
        Box::new(move |local: u64| {
            let mut covered = 0u64;
            for (b, bits) in ray_bits.iter().enumerate() {
                if local >> b & 1 == 1 {
                    covered |= bits;
                }
            }
            covered == all
        })
    } else {
        Box::new(move |local: u64| {
            let gens: Vec<Vec<Int>> = inside
                .iter()
                .enumerate()
                .filter(|(b, _)| local >> b & 1 == 1)
                .map(|(_, &i)| grading.column(i))
                .collect();
            Cone::from_generators(grading.k(), &gens)
                .map(|c| c.key() == cone.key())
                .unwrap_or(false)
        })
    }
}

/// All `size`-subsets of `0..n` as bit masks, in increasing order.
fn combinations(n: usize, size: usize) -> impl Iterator<Item = u64> {
    let limit = 1u64 << n;
    let mut next = if size == 0 {
        Some(0)
    } else if size <= n {
        Some((1u64 << size) - 1)
    } else {
        None
    };
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 {
            None
        } else {
            // Gosper's hack
            let c = cur & cur.wrapping_neg();
            let r = cur + c;
            let n2 = (((r ^ cur) >> 2) / c) | r;
            (n2 < limit).then_some(n2)
        };
        Some(cur)
    })
}

/// Every projected face `Q(f)`, grouped by cone, with its member faces in
/// (size, index set) order.
#[derive(Clone, Debug)]
pub struct ProjectedFace {
    pub cone: Cone,
    pub members: Vec<Face>,
}

pub fn projected_faces(grading: &Grading) -> Result<Vec<ProjectedFace>> {
    let r = grading.r();
    if r >= 32 {
        return Err(Error::TooManyVariables { max: 31, found: r });
    }
    let cones: Vec<(Face, Cone)> = (0..1u64 << r)
        .into_par_iter()
        .map(|m| {
            let f = Face::from_mask(r, m);
            (f, project_face(grading, &f))
        })
        .collect();
    let mut groups: BTreeMap<ConeKey, ProjectedFace> = BTreeMap::new();
    for (f, c) in cones {
        groups
            .entry(c.key().clone())
            .or_insert_with(|| ProjectedFace {
                cone: c,
                members: Vec::new(),
            })
            .members
            .push(f);
    }
    let mut out: Vec<ProjectedFace> = groups.into_values().collect();
    for g in &mut out {
        g.members.sort_by_key(|f| (f.len(), f.mask()));
    }
    Ok(out)
}

/// The `j`-dimensional projected a-faces, each with its first a-face witness.
pub fn orbit_cones(oracle: &OrbitConeOracle, j: usize) -> Result<BTreeMap<ConeKey, OrbitCone>> {
    let mut out = BTreeMap::new();
    for group in projected_faces(oracle.grading())? {
        if group.cone.dim() != j {
            continue;
        }
        for f in &group.members {
            if oracle.afaces().is_aface(f)? {
                out.insert(
                    group.cone.key().clone(),
                    OrbitCone {
                        cone: group.cone.clone(),
                        witness: *f,
                    },
                );
                break;
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::kernel_basis;
    use crate::poly::{parse_polynomial, pluecker_ideal, pluecker_symmetries};

    /// `T^mu` with `pullback(pushed) = T^mu * g`, if it exists.
    fn pullback_shift(p: &IntMatrix, g: &Polynomial, pushed: &Polynomial) -> Option<Vec<Int>> {
        let pulled: Vec<(Vec<Int>, Rat)> = pushed
            .terms()
            .iter()
            .map(|(m, c)| {
                let e: Vec<Int> = (0..p.cols())
                    .map(|j| {
                        (0..p.rows())
                            .map(|i| Int::from(m.exponents()[i]) * &p[(i, j)])
                            .sum()
                    })
                    .collect();
                (e, c.clone())
            })
            .collect();
        let source: Vec<(Vec<Int>, Rat)> = g
            .terms()
            .iter()
            .map(|(m, c)| {
                (
                    m.exponents().iter().map(|&e| Int::from(e)).collect(),
                    c.clone(),
                )
            })
            .collect();
        if pulled.len() != source.len() {
            return None;
        }
        let (e0, c0) = &pulled[0];
        source.iter().filter(|(_, c)| c == c0).find_map(|(s, _)| {
            let mu: Vec<Int> = e0.iter().zip(s).map(|(a, b)| a - b).collect();
            source
                .iter()
                .all(|(se, sc)| {
                    let target: Vec<Int> = se.iter().zip(&mu).map(|(a, b)| a + b).collect();
                    pulled.iter().any(|(pe, pc)| *pe == target && pc == sc)
                })
                .then_some(mu)
        })
    }

    fn face(r: usize, one_based: &[usize]) -> Face {
        Face::from_indices(r, one_based.iter().map(|i| i - 1)).unwrap()
    }

    fn p(s: &str, r: usize) -> Polynomial {
        parse_polynomial(s, r).unwrap()
    }

    #[test]
    fn quick_reject_examples() {
        let a = pluecker_ideal(4).unwrap();
        assert!(quick_reject(&a, &face(6, &[3, 4])));
        assert!(!quick_reject(&a, &face(6, &[1, 2, 5, 6])));
        assert!(!quick_reject(&Ideal::zero(6), &face(6, &[3, 4])));
    }

    #[test]
    fn naive_examples() {
        let a = pluecker_ideal(4).unwrap();
        assert!(aface_test_naive(&a, &Face::empty(6)));
        assert!(aface_test_naive(&a, &Face::full(6)));
        assert!(aface_test_naive(&a, &face(6, &[1, 2, 5, 6])));
        assert!(!aface_test_naive(&a, &face(6, &[3, 4])));
    }

    #[test]
    fn reduced_examples() {
        let a = pluecker_ideal(4).unwrap();
        assert!(aface_test_reduced(&a, &face(6, &[1, 2, 5, 6])).unwrap());
        assert!(!aface_test_reduced(&a, &face(6, &[3, 4])).unwrap());
        assert!(aface_test_reduced(&Ideal::zero(4), &face(4, &[2])).unwrap());
    }

    #[test]
    fn projection_matrices() {
        let pm = projection_matrix(&[p("T1 - T2", 2)]).unwrap();
        assert_eq!(pm, IntMatrix::from_i64_rows(2, &[vec![1, -1]]).unwrap());
        let g = p("T1*T6 - T2*T5 + T3*T4", 6);
        let pm = projection_matrix(std::slice::from_ref(&g)).unwrap();
        assert_eq!((pm.rows(), pm.cols()), (2, 6));
        let mut a = kernel_basis(&pm);
        let mut b = kernel_basis(&exponent_offsets(&g).unwrap());
        a.sort();
        b.sort();
        assert_eq!(
            crate::arith::rref_rows(a, 6).rows,
            crate::arith::rref_rows(b, 6).rows
        );
        assert_eq!(projection_matrix(&[p("T1*T2", 2)]).unwrap().rows(), 0);
    }

    #[test]
    fn pushforward_examples() {
        let id = IntMatrix::identity(2);
        let g = p("T1 - T2", 2);
        let h = pushforward(&id, &g).unwrap();
        assert_eq!(h.len(), 2);
        assert!(pullback_shift(&id, &g, &h).is_some());
        let mono = p("3*T1*T2", 2);
        let pm = projection_matrix(std::slice::from_ref(&mono)).unwrap();
        assert_eq!(
            pushforward(&pm, &mono).unwrap(),
            Polynomial::constant(0, Rat::from_integer(3.into()))
        );
        let pl = p("T1*T6 - T2*T5 + T3*T4", 6);
        let pm = projection_matrix(std::slice::from_ref(&pl)).unwrap();
        let h = pushforward(&pm, &pl).unwrap();
        assert_eq!((h.nvars(), h.len()), (2, 3));
        assert!(pullback_shift(&pm, &pl, &h).is_some());
    }

    #[test]
    fn non_integral_pushforward_rejected() {
        let pm = IntMatrix::from_i64_rows(2, &[vec![2, 0]]).unwrap();
        assert!(matches!(
            pushforward(&pm, &p("T1 - 1", 2)),
            Err(Error::NonIntegralPushforward)
        ));
        assert!(matches!(
            pushforward(&pm, &p("T2 - 1", 2)),
            Err(Error::NonIntegralPushforward)
        ));
    }

    #[test]
    fn linear_shortcut() {
        assert_eq!(linear_solve_test(&[p("T1 + T2 - 2", 2)]), Some(true));
        assert_eq!(linear_solve_test(&[p("T1", 2)]), Some(false));
        assert_eq!(linear_solve_test(&[p("T1^2 - T2", 2)]), None);
        assert_eq!(
            linear_solve_test(&[p("T1 - 1", 1), p("T1 - 2", 1)]),
            Some(false)
        );
    }

    #[test]
    fn enumeration_matches_naive() {
        let a = pluecker_ideal(4).unwrap();
        let run = enumerate_afaces(&a, &[]).unwrap();
        let naive: Vec<Face> = Face::all(6).filter(|f| aface_test_naive(&a, f)).collect();
        let mut got = run.faces.clone();
        got.sort();
        assert_eq!(got, naive);
        assert_eq!(run.tests.total(), 64);
    }

    #[test]
    fn zero_ideal_enumeration() {
        assert_eq!(
            enumerate_afaces(&Ideal::zero(2), &[]).unwrap().faces.len(),
            4
        );
    }

    #[test]
    fn symmetric_enumeration() {
        let a = pluecker_ideal(4).unwrap();
        let syms = pluecker_symmetries(4).unwrap();
        let plain = enumerate_afaces(&a, &[]).unwrap();
        let sym = enumerate_afaces(&a, &syms).unwrap();
        assert_eq!(plain.faces, sym.faces);
        assert!(sym.tests.total() < plain.tests.total());
        let bad = Permutation::from_one_based(&[2, 1, 3, 4, 5, 6]).unwrap();
        assert!(matches!(
            enumerate_afaces(&a, &[bad]),
            Err(Error::InvalidSymmetry(_))
        ));
    }

    #[test]
    fn signs_are_resolved() {
        for n in 4..=6 {
            let a = pluecker_ideal(n).unwrap();
            for signed in pluecker_symmetries(n).unwrap() {
                let unsigned = Permutation::new(signed.images().to_vec()).unwrap();
                let resolved = resolve_signs(&a, &unsigned).expect("signs exist");
                assert_eq!(resolved.images(), signed.images());
                validate_symmetries(&a, &[unsigned]).unwrap();
            }
        }
        let a = pluecker_ideal(4).unwrap();
        let swap = Permutation::from_one_based(&[2, 1, 3, 4, 5, 6]).unwrap();
        assert!(resolve_signs(&a, &swap).is_none());
        let b = Ideal::parse("vars 2\nT1^2 - T2^2\n").unwrap();
        let flip = Permutation::from_one_based(&[2, 1]).unwrap();
        assert!(resolve_signs(&b, &flip).is_some());
        let c = Ideal::parse("vars 3\nT1*T2 - T3^2\nT1 - 2*T2\n").unwrap();
        let swap12 = Permutation::from_one_based(&[2, 1, 3]).unwrap();
        assert!(resolve_signs(&c, &swap12).is_none());
    }

    #[test]
    fn solve_gf2_systems() {
        assert_eq!(solve_gf2(vec![(0b11, true), (0b10, true)]), Some(0b10));
        assert_eq!(solve_gf2(vec![(0b11, true), (0b11, false)]), None);
        assert_eq!(solve_gf2(vec![]), Some(0));
    }

    #[test]
    fn oracle_caches() {
        let a = pluecker_ideal(4).unwrap();
        let oracle = AfaceOracle::new(a);
        let f = face(6, &[1, 2, 5, 6]);
        assert!(oracle.is_aface(&f).unwrap());
        assert!(oracle.is_aface(&f).unwrap());
        assert_eq!(oracle.tests_run(), 1);
    }

    #[test]
    fn combinations_in_order() {
        let c: Vec<u64> = combinations(4, 2).collect();
        assert_eq!(c, vec![0b0011, 0b0101, 0b0110, 0b1001, 0b1010, 0b1100]);
        assert_eq!(combinations(3, 0).collect::<Vec<_>>(), vec![0]);
        assert_eq!(combinations(3, 3).collect::<Vec<_>>(), vec![0b111]);
        assert_eq!(combinations(2, 3).count(), 0);
    }

    #[test]
    fn orbit_cones_of_zero_ideal() {
        let q = crate::poly::grassmannian_grading(4).unwrap();
        let oracle = OrbitConeOracle::new(q.clone(), AfaceOracle::new(Ideal::zero(6)));
        let all: usize = projected_faces(&q)
            .unwrap()
            .iter()
            .filter(|g| g.cone.dim() == 3)
            .count();
        assert_eq!(orbit_cones(&oracle, 3).unwrap().len(), all);
        assert!(orbit_cones(&oracle, 4).unwrap().is_empty());
    }

    #[test]
    fn witness_search_agrees_with_catalog() {
        let q = crate::poly::grassmannian_grading(4).unwrap();
        let a = pluecker_ideal(4).unwrap();
        let oracle = OrbitConeOracle::new(q.clone(), AfaceOracle::new(a));
        for j in 0..=3 {
            let by_catalog = orbit_cones(&oracle, j).unwrap();
            for group in projected_faces(&q).unwrap() {
                if group.cone.dim() != j {
                    continue;
                }
                let w = oracle.witness(&group.cone).unwrap();
                assert_eq!(w.is_some(), by_catalog.contains_key(group.cone.key()));
                if let Some(w) = w {
                    assert_eq!(by_catalog[group.cone.key()].witness, w);
                }
            }
        }
    }
}
