//! GIT-chambers, wall crossing, and the traversal of the GIT-fan.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::OnceLock;

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::afaces::{projected_faces, AfaceOracle, OrbitConeOracle};
use crate::arith::{dot, Int, Rat};
use crate::cone::{clear_denominators, inner_normal, Cone, ConeKey, Fan, FanJson};
use crate::error::{Error, Result};
use crate::poly::{Grading, Ideal, Permutation};

/// Which chamber algorithm drives the traversal.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Variant {
    /// Intersect the full-dimensional projected faces whose facets are all
    /// projected a-faces.
    #[default]
    OrbitCones,
    /// Intersect the full-dimensional projected a-faces.
    Afaces,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::OrbitCones => "orbit-cones",
            Variant::Afaces => "afaces",
        })
    }
}

impl FromStr for Variant {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "orbit-cones" => Ok(Variant::OrbitCones),
            "afaces" => Ok(Variant::Afaces),
            other => Err(format!("unknown algorithm {other:?}")),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stats {
    pub aface_tests: usize,
    pub cones_intersected: usize,
    pub chambers: usize,
    pub walls_crossed: usize,
}

struct Candidate {
    cone: Cone,
    ge: bool,
    le: bool,
    facets_ok: OnceLock<Result<bool>>,
}

/// Random hyperplane `h.x = 0` through an interior point of the support.
struct Locator {
    normal: Vec<Int>,
}

/// Everything shared by the chamber computations of one run: the support,
/// the full-dimensional projected faces, and the cached a-face oracles.
pub struct GitProblem {
    grading: Grading,
    support: Cone,
    candidates: Vec<Candidate>,
    locator: Locator,
    oracle: OrbitConeOracle,
    cones_intersected: AtomicUsize,
}

impl GitProblem {
    pub fn new(
        ideal: Ideal,
        grading: Grading,
        symmetries: Vec<Permutation>,
        seed: u64,
    ) -> Result<Self> {
        if ideal.nvars() != grading.r() {
            return Err(Error::DimensionMismatch {
                expected: grading.r(),
                found: ideal.nvars(),
            });
        }
        ideal.check_homogeneous(&grading)?;
        let k = grading.k();
        let support = Cone::from_generators(k, &grading.columns())?;
        if !support.is_full_dimensional() {
            return Err(Error::DegenerateGrading {
                dim: support.dim(),
                k,
            });
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
        let locator = Locator::random(&support, &mut rng);
        let mut full: Vec<Cone> = projected_faces(&grading)?
            .into_iter()
            .map(|g| g.cone)
            .filter(|c| c.dim() == k)
            .collect();
        full.sort_by(|a, b| {
            a.rays()
                .len()
                .cmp(&b.rays().len())
                .then_with(|| a.key().cmp(b.key()))
        });
        let candidates = full
            .into_iter()
            .map(|cone| {
                let (ge, le) = locator.sides(&cone);
                Candidate {
                    cone,
                    ge,
                    le,
                    facets_ok: OnceLock::new(),
                }
            })
            .collect();
        let afaces = if symmetries.is_empty() {
            AfaceOracle::new(ideal)
        } else {
            AfaceOracle::with_symmetries(ideal, symmetries)?
        };
        Ok(GitProblem {
            oracle: OrbitConeOracle::new(grading.clone(), afaces),
            grading,
            support,
            candidates,
            locator,
            cones_intersected: AtomicUsize::new(0),
        })
    }

    pub fn grading(&self) -> &Grading {
        &self.grading
    }

    /// The cone `Q(gamma)` over all columns.
    pub fn support(&self) -> &Cone {
        &self.support
    }

    pub fn oracle(&self) -> &OrbitConeOracle {
        &self.oracle
    }

    /// The full-dimensional projected faces, in processing order.
    pub fn full_dimensional_projected_faces(&self) -> impl Iterator<Item = &Cone> {
        self.candidates.iter().map(|c| &c.cone)
    }

    pub fn aface_tests(&self) -> usize {
        self.oracle.afaces().tests_run()
    }

    pub fn cones_intersected(&self) -> usize {
        self.cones_intersected.load(Ordering::Relaxed)
    }

    fn check_weight(&self, w: &[Rat]) -> Result<()> {
        if !self.support.contains(w, true)? {
            let s: Vec<String> = w.iter().map(|x| x.to_string()).collect();
            return Err(Error::WeightNotInterior(format!("({})", s.join(","))));
        }
        Ok(())
    }

    fn containing(&self, w: &[Rat], point_location: bool) -> Result<Vec<usize>> {
        self.check_weight(w)?;
        let wi = clear_denominators(w);
        let side = dot(&self.locator.normal, &wi);
        Ok((0..self.candidates.len())
            .filter(|&i| {
                let c = &self.candidates[i];
                if point_location
                    && ((side.is_positive() && !c.ge) || (side.is_negative() && !c.le))
                {
                    return false;
                }
                c.cone.contains_int(&wi, false).expect("dimension checked")
            })
            .collect())
    }

    /// All full-dimensional projected faces containing `w`.
    pub fn projected_cones_containing(
        &self,
        w: &[Rat],
        point_location: bool,
    ) -> Result<Vec<&Cone>> {
        Ok(self
            .containing(w, point_location)?
            .into_iter()
            .map(|i| &self.candidates[i].cone)
            .collect())
    }

    fn facets_ok(&self, i: usize) -> Result<bool> {
        let c = &self.candidates[i];
        let r = c.facets_ok.get_or_init(|| {
            for f in c.cone.facets() {
                if !self.oracle.is_orbit_cone(&f)? {
                    return Ok(false);
                }
            }
            Ok(true)
        });
        match r {
            Ok(b) => Ok(*b),
            Err(e) => Err(Error::Internal(e.to_string())),
        }
    }

    fn intersect_admissible(
        &self,
        w: &[Rat],
        admissible: impl Fn(usize) -> Result<bool>,
    ) -> Result<Cone> {
        let mut lambda = Cone::full_space(self.grading.k());
        for i in self.containing(w, true)? {
            let theta = &self.candidates[i].cone;
            if theta.contains_cone(&lambda) || !admissible(i)? {
                continue;
            }
            lambda = lambda.intersect(theta)?;
            self.cones_intersected.fetch_add(1, Ordering::Relaxed);
        }
        Ok(lambda)
    }

    /// The GIT-chamber of `w`, intersecting projected faces whose facets are
    /// all projected a-faces.
    pub fn chamber(&self, w: &[Rat]) -> Result<Cone> {
        self.intersect_admissible(w, |i| self.facets_ok(i))
    }

    /// The GIT-chamber of `w`, intersecting the projected a-faces.
    pub fn chamber_v2(&self, w: &[Rat]) -> Result<Cone> {
        self.intersect_admissible(w, |i| self.oracle.is_orbit_cone(&self.candidates[i].cone))
    }

    pub fn chamber_with(&self, variant: Variant, w: &[Rat]) -> Result<Cone> {
        match variant {
            Variant::OrbitCones => self.chamber(w),
            Variant::Afaces => self.chamber_v2(w),
        }
    }

    /// A seeded random positive combination of the columns.
    pub fn random_interior_weight(&self, rng: &mut impl Rng) -> Vec<Rat> {
        let k = self.grading.k();
        let mut w = vec![Int::zero(); k];
        let bound = 4 * self.grading.r() as i64;
        for col in self.grading.columns() {
            let c = Int::from(rng.gen_range(1..=bound));
            for (x, y) in w.iter_mut().zip(&col) {
                *x += &c * y;
            }
        }
        w.into_iter().map(Rat::from_integer).collect()
    }
}

impl Locator {
    fn random(support: &Cone, rng: &mut impl Rng) -> Locator {
        let k = support.ambient();
        let p: Vec<Int> = clear_denominators(
            &support
                .relative_interior_point()
                .expect("support is full-dimensional"),
        );
        let pp = dot(&p, &p);
        loop {
            let g: Vec<Int> = (0..k)
                .map(|_| Int::from(rng.gen_range(-100i64..=100)))
                .collect();
            let gp = dot(&g, &p);
            let mut h: Vec<Int> = g.iter().zip(&p).map(|(a, b)| &pp * a - &gp * b).collect();
            if h.iter().any(|x| !x.is_zero()) || k <= 1 {
                crate::arith::make_primitive(&mut h);
                return Locator { normal: h };
            }
        }
    }

    fn sides(&self, cone: &Cone) -> (bool, bool) {
        let mut ge = false;
        let mut le = false;
        for g in cone.generators() {
            let s = dot(&self.normal, &g);
            ge |= !s.is_negative();
            le |= !s.is_positive();
        }
        (ge, le)
    }
}

/// Facets of `lambda` meeting the interior of `support`.
pub fn inner_facets(lambda: &Cone, support: &Cone) -> Vec<Cone> {
    lambda
        .facets()
        .into_iter()
        .filter(|eta| {
            let p = eta
                .relative_interior_point()
                .unwrap_or_else(|_| vec![Rat::zero(); eta.ambient()]);
            support.contains(&p, true).unwrap_or(false)
        })
        .collect()
}

/// Crosses the facet `eta` of `lambda`: returns `w'` and the chamber on the
/// other side.
pub fn adjacent_weight(
    lambda: &Cone,
    eta: &Cone,
    support: &Cone,
    chamber_fn: impl Fn(&[Rat]) -> Result<Cone>,
) -> Result<(Vec<Rat>, Cone)> {
    let base = eta.relative_interior_point()?;
    let v = inner_normal(lambda, eta)?;
    let mut eps = Rat::one();
    let two = Rat::from_integer(Int::from(2));
    for _ in 0..=64 {
        let w: Vec<Rat> = base
            .iter()
            .zip(&v)
            .map(|(b, x)| b - &eps * Rat::from_integer(x.clone()))
            .collect();
        if support.contains(&w, true)? {
            let next = chamber_fn(&w)?;
            if next.intersect(lambda)?.key() == eta.key() {
                return Ok((w, next));
            }
        }
        eps /= &two;
    }
    Err(Error::Internal(
        "wall crossing did not settle after 64 halvings".into(),
    ))
}

#[derive(Clone, Debug)]
pub struct TraverseOptions {
    pub variant: Variant,
    pub seed: u64,
    pub jobs: usize,
    pub symmetries: Vec<Permutation>,
}

impl Default for TraverseOptions {
    fn default() -> Self {
        TraverseOptions {
            variant: Variant::OrbitCones,
            seed: 0,
            jobs: 1,
            symmetries: Vec::new(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct GitFan {
    pub fan: Fan,
    pub stats: Stats,
}

/// Output document: the fan plus the run statistics.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GitFanJson {
    #[serde(flatten)]
    pub fan: FanJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stats: Option<Stats>,
}

impl GitFan {
    pub fn to_json(&self, with_stats: bool) -> GitFanJson {
        GitFanJson {
            fan: self.fan.to_json(),
            stats: with_stats.then(|| self.stats.clone()),
        }
    }
}

struct FrontierFacet {
    facet: Cone,
    owner: ConeKey,
}

fn toggle(frontier: &mut BTreeMap<ConeKey, FrontierFacet>, facet: Cone, owner: &ConeKey) {
    let key = facet.key().clone();
    if frontier.remove(&key).is_none() {
        frontier.insert(
            key,
            FrontierFacet {
                facet,
                owner: owner.clone(),
            },
        );
    }
}

fn thread_pool(jobs: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::Internal(e.to_string()))
}

/// All maximal cones of the GIT-fan, found by crossing walls from a random
/// full-dimensional chamber.
pub fn traverse(ideal: &Ideal, grading: &Grading, options: &TraverseOptions) -> Result<GitFan> {
    thread_pool(options.jobs)?.install(|| {
        let problem = GitProblem::new(
            ideal.clone(),
            grading.clone(),
            options.symmetries.clone(),
            options.seed,
        )?;
        traverse_problem(&problem, options.variant, options.seed)
    })
}

pub fn traverse_problem(problem: &GitProblem, variant: Variant, seed: u64) -> Result<GitFan> {
    let support = problem.support();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut start = None;
    for _ in 0..1000 {
        let w = problem.random_interior_weight(&mut rng);
        let lambda = problem.chamber_with(variant, &w)?;
        if lambda.is_full_dimensional() {
            start = Some(lambda);
            break;
        }
    }
    let start = start.ok_or_else(|| Error::Internal("no full-dimensional start chamber".into()))?;

    let mut fan = Fan::new(support.ambient());
    let mut frontier: BTreeMap<ConeKey, FrontierFacet> = BTreeMap::new();
    for eta in inner_facets(&start, support) {
        toggle(&mut frontier, eta, start.key());
    }
    fan.insert(start)?;
    let mut walls = 0;
    while !frontier.is_empty() {
        let batch: Vec<(&ConeKey, &FrontierFacet)> = frontier.iter().collect();
        let crossed: Vec<Result<Cone>> = batch
            .par_iter()
            .map(|(_, f)| {
                let owner = fan.get(&f.owner).expect("owner chamber is in the fan");
                adjacent_weight(owner, &f.facet, support, |w| {
                    problem.chamber_with(variant, w)
                })
                .map(|(_, c)| c)
            })
            .collect();
        let processed: Vec<ConeKey> = batch.iter().map(|(k, _)| (*k).clone()).collect();
        for next in crossed {
            let next = next?;
            walls += 1;
            if fan.contains_key(next.key()) {
                continue;
            }
            for eta in inner_facets(&next, support) {
                toggle(&mut frontier, eta, next.key());
            }
            fan.insert(next)?;
        }
        if processed.iter().any(|k| frontier.contains_key(k)) {
            return Err(Error::Internal(
                "crossed wall is still on the frontier".into(),
            ));
        }
    }
    let fan = fan.sorted();
    let stats = Stats {
        aface_tests: problem.aface_tests(),
        cones_intersected: problem.cones_intersected(),
        chambers: fan.len(),
        walls_crossed: walls,
    };
    Ok(GitFan { fan, stats })
}

/// The GKZ decomposition: the GIT-fan of the zero ideal.
pub fn gkz(grading: &Grading, seed: u64, jobs: usize) -> Result<GitFan> {
    let options = TraverseOptions {
        seed,
        jobs,
        ..TraverseOptions::default()
    };
    traverse(&Ideal::zero(grading.r()), grading, &options)
}

/// Outcome of [`verify_fan`], listing every violated condition.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FanAudit {
    pub problems: Vec<String>,
}

impl FanAudit {
    pub fn is_ok(&self) -> bool {
        self.problems.is_empty()
    }
}

/// Checks that the cones form a pure fan with support `support`.
pub fn audit_fan(fan: &Fan, support: &Cone) -> FanAudit {
    let mut problems = Vec::new();
    let cones = fan.cones();
    for (i, c) in cones.iter().enumerate() {
        if !support.contains_cone(c) {
            problems.push(format!("cone {i} leaves the support"));
        }
        if c.dim() != support.dim() {
            problems.push(format!("cone {i} is not full-dimensional"));
        }
    }
    let pairs: Vec<(usize, usize)> = (0..cones.len())
        .flat_map(|i| (i + 1..cones.len()).map(move |j| (i, j)))
        .collect();
    let bad_pairs: Vec<(usize, usize)> = pairs
        .into_par_iter()
        .filter(|&(i, j)| {
            let (a, b) = (&cones[i], &cones[j]);
            match a.intersect(b) {
                Ok(x) => !(a.has_face(&x) && b.has_face(&x)),
                Err(_) => true,
            }
        })
        .collect();
    for (i, j) in bad_pairs {
        problems.push(format!("cones {i} and {j} do not meet in a common face"));
    }
    let mut walls: HashMap<ConeKey, (Cone, usize)> = HashMap::new();
    for c in cones {
        for f in c.facets() {
            walls.entry(f.key().clone()).or_insert((f, 0)).1 += 1;
        }
    }
    let mut sorted: Vec<&(Cone, usize)> = walls.values().collect();
    sorted.sort_by(|a, b| a.0.key().cmp(b.0.key()));
    for (f, count) in sorted {
        let p = f.relative_interior_point().unwrap_or_default();
        let inner = support.contains(&p, true).unwrap_or(false);
        if inner && *count != 2 {
            problems.push(format!("inner facet {f} belongs to {count} cones"));
        }
        if !inner && !support.on_boundary(f) {
            problems.push(format!(
                "boundary facet {f} is not in a facet of the support"
            ));
        }
    }
    FanAudit { problems }
}

pub fn verify_fan(fan: &Fan, support: &Cone) -> bool {
    audit_fan(fan, support).is_ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{grassmannian_grading, pluecker_ideal};

    fn r(xs: &[i64]) -> Vec<Rat> {
        xs.iter()
            .map(|&x| Rat::from_integer(Int::from(x)))
            .collect()
    }

    fn v(xs: &[i64]) -> Vec<Int> {
        xs.iter().map(|&x| Int::from(x)).collect()
    }

    fn g24() -> GitProblem {
        GitProblem::new(
            pluecker_ideal(4).unwrap(),
            grassmannian_grading(4).unwrap(),
            vec![],
            1,
        )
        .unwrap()
    }

    #[test]
    fn point_location_is_sound() {
        let p = g24();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let w = p.random_interior_weight(&mut rng);
            let a: Vec<&ConeKey> = p
                .projected_cones_containing(&w, true)
                .unwrap()
                .iter()
                .map(|c| c.key())
                .collect();
            let b: Vec<&ConeKey> = p
                .projected_cones_containing(&w, false)
                .unwrap()
                .iter()
                .map(|c| c.key())
                .collect();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn cones_containing_center() {
        let p = g24();
        let w = r(&[1, 1, 1]);
        let found = p.projected_cones_containing(&w, true).unwrap();
        let brute = p
            .full_dimensional_projected_faces()
            .filter(|c| c.contains(&w, false).unwrap())
            .count();
        assert_eq!(found.len(), brute);
        assert!(!found.is_empty());
    }

    #[test]
    fn weight_outside_rejected() {
        let p = g24();
        assert!(matches!(
            p.chamber(&r(&[1, 0, 0])),
            Err(Error::WeightNotInterior(_))
        ));
        assert!(matches!(
            p.chamber(&r(&[-1, 1, 1])),
            Err(Error::WeightNotInterior(_))
        ));
    }

    #[test]
    fn both_variants_agree() {
        let p = g24();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..10 {
            let w = p.random_interior_weight(&mut rng);
            assert_eq!(p.chamber(&w).unwrap(), p.chamber_v2(&w).unwrap());
        }
    }

    #[test]
    fn chamber_is_stable_inside() {
        let p = g24();
        let lambda = p.chamber(&r(&[1, 1, 2])).unwrap();
        let w = lambda.relative_interior_point().unwrap();
        assert_eq!(p.chamber(&w).unwrap(), lambda);
    }

    #[test]
    fn inner_facet_examples() {
        let support = Cone::orthant(2);
        assert!(inner_facets(&support, &support).is_empty());
        let hp = Cone::from_inequalities(2, &[v(&[0, 1])], &[]).unwrap();
        let quadrant = Cone::orthant(2);
        let inner = inner_facets(&quadrant, &hp);
        assert_eq!(inner.len(), 1);
        assert_eq!(inner[0], Cone::from_generators(2, &[v(&[0, 1])]).unwrap());
    }

    #[test]
    fn wall_crossing_formula() {
        let plane = Cone::full_space(2);
        let upper = Cone::from_inequalities(2, &[v(&[0, 1])], &[]).unwrap();
        let axis = Cone::from_generators(2, &[v(&[1, 0]), v(&[-1, 0])]).unwrap();
        let lower = Cone::from_inequalities(2, &[v(&[0, -1])], &[]).unwrap();
        let (w, next) = adjacent_weight(&upper, &axis, &plane, |_| Ok(lower.clone())).unwrap();
        assert_eq!(w, r(&[0, -1]));
        assert_eq!(next, lower);
    }

    #[test]
    fn halving_engages_on_narrow_neighbor() {
        // across the y-axis the quadrant meets the thin cone spanned by
        // (0,1) and (-1,8); the first weights fall into the cone beyond it
        let support = Cone::from_inequalities(2, &[v(&[0, 1])], &[]).unwrap();
        let quadrant = Cone::orthant(2);
        let thin = Cone::from_generators(2, &[v(&[0, 1]), v(&[-1, 8])]).unwrap();
        let far = Cone::from_generators(2, &[v(&[-1, 8]), v(&[-1, 0])]).unwrap();
        let eta = Cone::from_generators(2, &[v(&[0, 1])]).unwrap();
        let calls = AtomicUsize::new(0);
        let (w, next) = adjacent_weight(&quadrant, &eta, &support, |w| {
            calls.fetch_add(1, Ordering::Relaxed);
            Ok(if thin.contains(w, false)? {
                thin.clone()
            } else {
                far.clone()
            })
        })
        .unwrap();
        assert_eq!(next, thin);
        assert_eq!(w, vec![Rat::new(Int::from(-1), Int::from(8)), Rat::one()]);
        assert_eq!(calls.load(Ordering::Relaxed), 4);
    }

    #[test]
    fn g24_fan() {
        let out = traverse(
            &pluecker_ideal(4).unwrap(),
            &grassmannian_grading(4).unwrap(),
            &TraverseOptions::default(),
        )
        .unwrap();
        assert_eq!(out.fan.len(), 4);
        assert_eq!(out.stats.chambers, 4);
        let support = Cone::orthant(3);
        assert!(verify_fan(&out.fan, &support));
    }

    #[test]
    fn g24_gkz() {
        let out = gkz(&grassmannian_grading(4).unwrap(), 3, 1).unwrap();
        assert_eq!(out.fan.len(), 12);
    }

    #[test]
    fn overlapping_cones_fail_audit() {
        let a = Cone::from_inequalities(2, &[v(&[1, 0])], &[]).unwrap();
        let b = Cone::from_inequalities(2, &[v(&[1, 1])], &[]).unwrap();
        let fan = Fan::from_cones(2, [a, b]).unwrap();
        assert!(!verify_fan(&fan, &Cone::full_space(2)));
    }

    #[test]
    fn variant_names() {
        assert_eq!("afaces".parse::<Variant>().unwrap(), Variant::Afaces);
        assert_eq!(Variant::OrbitCones.to_string(), "orbit-cones");
        assert!("x".parse::<Variant>().is_err());
    }
}
