//! Buchberger's algorithm over the integers (content-free polynomials) with
//! Gebauer-Moeller pair pruning and the sugar selection strategy.

use std::cmp::Ordering;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{Int, Rat};
use crate::poly::{Monomial, Polynomial};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum MonomialOrder {
    #[default]
    DegRevLex,
    Lex,
}

/// Exponent vector with the total degree stored in slot 0.
type Mono = Vec<u32>;

impl MonomialOrder {
    fn cmp(self, a: &Mono, b: &Mono) -> Ordering {
        match self {
            MonomialOrder::DegRevLex => a[0].cmp(&b[0]).then_with(|| {
                for i in (1..a.len()).rev() {
                    if a[i] != b[i] {
                        return b[i].cmp(&a[i]);
                    }
                }
                Ordering::Equal
            }),
            MonomialOrder::Lex => a[1..].cmp(&b[1..]),
        }
    }
}

fn mono_from(m: &Monomial) -> Mono {
    let mut v = Vec::with_capacity(m.exponents().len() + 1);
    v.push(m.exponents().iter().sum());
    v.extend_from_slice(m.exponents());
    v
}

fn divides(a: &Mono, b: &Mono) -> bool {
    a[0] <= b[0] && a[1..].iter().zip(&b[1..]).all(|(x, y)| x <= y)
}

fn lcm(a: &Mono, b: &Mono) -> Mono {
    let mut v: Mono = a.iter().zip(b).map(|(x, y)| *x.max(y)).collect();
    v[0] = v[1..].iter().sum();
    v
}

fn coprime(a: &Mono, b: &Mono) -> bool {
    a[1..].iter().zip(&b[1..]).all(|(x, y)| *x == 0 || *y == 0)
}

fn quotient(a: &Mono, b: &Mono) -> Mono {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn mul(a: &Mono, b: &Mono) -> Mono {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Integer polynomial, terms sorted strictly decreasing in the order.
#[derive(Clone, Debug)]
struct IPoly {
    terms: Vec<(Mono, Int)>,
    sugar: u32,
}

impl IPoly {
    fn lm(&self) -> &Mono {
        &self.terms[0].0
    }

    fn lc(&self) -> &Int {
        &self.terms[0].1
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn is_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0[0] == 0
    }

    fn normalize(&mut self) -> Int {
        let mut g = Int::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        if self.terms.first().is_some_and(|(_, c)| c.is_negative()) {
            g = -g;
        }
        if !g.is_zero() && !g.is_one() {
            for (_, c) in self.terms.iter_mut() {
                *c = &*c / &g;
            }
        }
        g
    }
}

/// `a*f - b*u*g`, where `u*lm(g)` cancels against a term of `f`.
fn combine(
    order: MonomialOrder,
    f: &[(Mono, Int)],
    a: &Int,
    g: &[(Mono, Int)],
    b: &Int,
    u: &Mono,
) -> Vec<(Mono, Int)> {
    let mut out = Vec::with_capacity(f.len() + g.len());
    let mut i = 0;
    let mut j = 0;
    while i < f.len() || j < g.len() {
        let gm = g.get(j).map(|(m, _)| mul(m, u));
        let ord = match (f.get(i), &gm) {
            (Some((fm, _)), Some(gm)) => order.cmp(fm, gm),
            (Some(_), None) => Ordering::Greater,
            (None, _) => Ordering::Less,
        };
        match ord {
            Ordering::Greater => {
                out.push((f[i].0.clone(), a * &f[i].1));
                i += 1;
            }
            Ordering::Less => {
                out.push((gm.unwrap(), -(b * &g[j].1)));
                j += 1;
            }
            Ordering::Equal => {
                let c = a * &f[i].1 - b * &g[j].1;
                if !c.is_zero() {
                    out.push((f[i].0.clone(), c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// Full reduction of `f` by `basis`. Returns the remainder and the rational
/// factor `s` with `remainder = s * (true remainder)`.
fn reduce(order: MonomialOrder, f: IPoly, basis: &[&IPoly]) -> (IPoly, Rat) {
    let mut f = f;
    let mut scale = Rat::one();
    let mut k = 0;
    let mut steps = 0usize;
    while k < f.terms.len() {
        let m = &f.terms[k].0;
        let Some(g) = basis.iter().find(|g| divides(g.lm(), m)) else {
            k += 1;
            continue;
        };
        let u = quotient(m, g.lm());
        let c = &f.terms[k].1;
        let d = g.lc();
        let gcd = c.gcd(d);
        let a = d / &gcd;
        let b = c / &gcd;
        f.sugar = f.sugar.max(g.sugar + u[0]);
        f.terms = combine(order, &f.terms, &a, &g.terms, &b, &u);
        scale *= Rat::from_integer(a);
        steps += 1;
        if steps.is_multiple_of(8) {
            let c = f.normalize();
            if !c.is_zero() {
                scale /= Rat::from_integer(c);
            }
        }
    }
    let c = f.normalize();
    if !c.is_zero() {
        scale /= Rat::from_integer(c);
    }
    (f, scale)
}

fn to_ipoly(order: MonomialOrder, f: &Polynomial) -> (IPoly, Rat) {
    let mut l = Int::one();
    for (_, c) in f.terms() {
        l = l.lcm(c.denom());
    }
    let mut terms: Vec<(Mono, Int)> = f
        .terms()
        .iter()
        .map(|(m, c)| (mono_from(m), c.numer() * (&l / c.denom())))
        .collect();
    terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
    let sugar = terms.iter().map(|(m, _)| m[0]).max().unwrap_or(0);
    (IPoly { terms, sugar }, Rat::from_integer(l))
}

fn from_ipoly(nvars: usize, p: &IPoly, scale: &Rat) -> Polynomial {
    Polynomial::from_terms(
        nvars,
        p.terms.iter().map(|(m, c)| {
            (
                Monomial::new(m[1..].to_vec()),
                Rat::from_integer(c.clone()) / scale,
            )
        }),
    )
}

/// Remainder of multivariate division of `f` by `divisors` (first divisor wins).
pub fn normal_form(f: &Polynomial, divisors: &[Polynomial], order: MonomialOrder) -> Polynomial {
    let nvars = f.nvars();
    let (fi, s0) = to_ipoly(order, f);
    let gs: Vec<IPoly> = divisors
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| to_ipoly(order, g).0)
        .collect();
    let refs: Vec<&IPoly> = gs.iter().collect();
    let (r, s) = reduce(order, fi, &refs);
    from_ipoly(nvars, &r, &(s * s0))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    order: MonomialOrder,
    polys: Vec<Polynomial>,
}

impl GroebnerBasis {
    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    /// Reduced basis: primitive integer coefficients, positive leading
    /// coefficient, sorted by increasing leading monomial.
    pub fn polynomials(&self) -> &[Polynomial] {
        &self.polys
    }

    pub fn is_unit(&self) -> bool {
        self.polys.len() == 1 && self.polys[0].is_nonzero_constant()
    }

    pub fn reduce(&self, f: &Polynomial) -> Polynomial {
        normal_form(f, &self.polys, self.order)
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        self.reduce(f).is_zero()
    }
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Mono,
    sugar: u32,
}

struct Engine {
    order: MonomialOrder,
    polys: Vec<IPoly>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
}

impl Engine {
    fn new(order: MonomialOrder) -> Self {
        Engine {
            order,
            polys: Vec::new(),
            active: Vec::new(),
            pairs: Vec::new(),
        }
    }

    fn basis(&self) -> Vec<&IPoly> {
        self.polys
            .iter()
            .zip(&self.active)
            .filter(|(_, a)| **a)
            .map(|(p, _)| p)
            .collect()
    }

    fn pair(&self, i: usize, j: usize) -> Pair {
        let (pi, pj) = (&self.polys[i], &self.polys[j]);
        let l = lcm(pi.lm(), pj.lm());
        let sugar = (pi.sugar + l[0] - pi.lm()[0]).max(pj.sugar + l[0] - pj.lm()[0]);
        Pair {
            i,
            j,
            lcm: l,
            sugar,
        }
    }

    /// Gebauer-Moeller update with the new element `h`.
    fn update(&mut self, h: IPoly) {
        let hi = self.polys.len();
        let hm = h.lm().clone();
        self.polys.push(h);
        self.active.push(true);

        let cands: Vec<Pair> = (0..hi)
            .filter(|&g| self.active[g])
            .map(|g| self.pair(g, hi))
            .collect();
        // criterion on the new pairs: drop (g1, h) if another (g2, h) still
        // pending or already kept has an lcm dividing lcm(g1, h)
        let mut pending: Vec<Pair> = cands;
        let mut kept: Vec<Pair> = Vec::new();
        while !pending.is_empty() {
            let p = pending.remove(0);
            let copr = coprime(self.polys[p.i].lm(), &hm);
            if copr
                || !pending
                    .iter()
                    .chain(kept.iter())
                    .any(|q| divides(&q.lcm, &p.lcm))
            {
                kept.push(p);
            }
        }
        let fresh: Vec<Pair> = kept
            .into_iter()
            .filter(|p| !coprime(self.polys[p.i].lm(), &hm))
            .collect();

        let polys = &self.polys;
        self.pairs.retain(|p| {
            !(divides(&hm, &p.lcm)
                && lcm(polys[p.i].lm(), &hm) != p.lcm
                && lcm(polys[p.j].lm(), &hm) != p.lcm)
        });
        self.pairs.extend(fresh);

        for g in 0..hi {
            if self.active[g] && divides(&hm, self.polys[g].lm()) {
                self.active[g] = false;
            }
        }
    }

    fn next_pair(&mut self) -> Option<Pair> {
        let order = self.order;
        let idx = (0..self.pairs.len()).min_by(|&a, &b| {
            let (pa, pb) = (&self.pairs[a], &self.pairs[b]);
            pa.sugar
                .cmp(&pb.sugar)
                .then_with(|| order.cmp(&pa.lcm, &pb.lcm))
        })?;
        Some(self.pairs.swap_remove(idx))
    }

    fn spoly(&self, p: &Pair) -> IPoly {
        let (f, g) = (&self.polys[p.i], &self.polys[p.j]);
        let uf = quotient(&p.lcm, f.lm());
        let ug = quotient(&p.lcm, g.lm());
        let gcd = f.lc().gcd(g.lc());
        let a = g.lc() / &gcd;
        let b = f.lc() / &gcd;
        let fs: Vec<(Mono, Int)> = f.terms[1..]
            .iter()
            .map(|(m, c)| (mul(m, &uf), c.clone()))
            .collect();
        let gs = &g.terms[1..];
        let terms = combine(self.order, &fs, &a, gs, &b, &ug);
        let mut s = IPoly {
            terms,
            sugar: p.sugar,
        };
        s.normalize();
        s
    }

    /// Runs to completion; returns false as soon as a nonzero constant shows
    /// up when `stop_on_unit` is set.
    fn run(&mut self, stop_on_unit: bool) -> bool {
        while let Some(p) = self.next_pair() {
            let s = self.spoly(&p);
            if s.is_zero() {
                continue;
            }
            let basis = self.basis();
            let (h, _) = reduce(self.order, s, &basis);
            if h.is_zero() {
                continue;
            }
            if h.is_constant() && stop_on_unit {
                return false;
            }
            self.update(h);
        }
        true
    }

    fn add(&mut self, f: IPoly, stop_on_unit: bool) -> bool {
        let basis = self.basis();
        let (h, _) = reduce(self.order, f, &basis);
        if h.is_zero() {
            return true;
        }
        if h.is_constant() && stop_on_unit {
            return false;
        }
        self.update(h);
        true
    }

    fn reduced(&self) -> Vec<IPoly> {
        let mut min: Vec<IPoly> = self.basis().into_iter().cloned().collect();
        min.sort_by(|a, b| self.order.cmp(a.lm(), b.lm()));
        let mut out: Vec<IPoly> = Vec::new();
        for i in 0..min.len() {
            let others: Vec<&IPoly> = min
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, p)| p)
                .collect();
            let lead = IPoly {
                terms: vec![min[i].terms[0].clone()],
                sugar: 0,
            };
            let tail = IPoly {
                terms: min[i].terms[1..].to_vec(),
                sugar: min[i].sugar,
            };
            let (mut t, s) = reduce(self.order, tail, &others);
            // lead term scaled by the same factor as the tail
            let ls = &lead.terms[0].1 * s.numer();
            let mut terms = vec![(lead.terms[0].0.clone(), ls)];
            for (m, c) in t.terms.drain(..) {
                terms.push((m, c * s.denom()));
            }
            let mut p = IPoly {
                terms,
                sugar: min[i].sugar,
            };
            p.normalize();
            out.push(p);
        }
        out
    }
}

fn prepare(order: MonomialOrder, gens: &[Polynomial]) -> Vec<IPoly> {
    let mut v: Vec<IPoly> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| {
            let mut p = to_ipoly(order, g).0;
            p.normalize();
            p
        })
        .collect();
    v.sort_by(|a, b| {
        a.sugar
            .cmp(&b.sugar)
            .then_with(|| order.cmp(a.lm(), b.lm()))
    });
    v
}

/// Reduced Groebner basis of the ideal generated by `gens`.
pub fn buchberger(gens: &[Polynomial], order: MonomialOrder) -> GroebnerBasis {
    let nvars = gens.first().map_or(0, |g| g.nvars());
    let mut engine = Engine::new(order);
    for p in prepare(order, gens) {
        engine.add(p, false);
    }
    engine.run(false);
    let polys = engine
        .reduced()
        .iter()
        .map(|p| from_ipoly(nvars, p, &Rat::one()))
        .collect();
    GroebnerBasis { order, polys }
}

/// Whether the ideal generated by `gens` is the whole ring.
pub fn contains_one(gens: &[Polynomial]) -> bool {
    let order = MonomialOrder::DegRevLex;
    let mut engine = Engine::new(order);
    for p in prepare(order, gens) {
        if !engine.add(p, true) {
            return true;
        }
    }
    !engine.run(true)
}

/// `f` lies in the radical of `<gens>`, decided as `1 in <gens, 1 - y f>`.
pub fn radical_membership(f: &Polynomial, gens: &[Polynomial]) -> bool {
    if f.is_zero() {
        return true;
    }
    let n = f.nvars();
    let lift = |p: &Polynomial| {
        Polynomial::from_terms(
            n + 1,
            p.terms().iter().map(|(m, c)| {
                let mut e = m.exponents().to_vec();
                e.push(0);
                (Monomial::new(e), c.clone())
            }),
        )
    };
    let mut sys: Vec<Polynomial> = gens.iter().map(lift).collect();
    let mut y = vec![0u32; n + 1];
    y[n] = 1;
    let yf = lift(f).mul(&Polynomial::monomial(y));
    sys.push(Polynomial::constant(n + 1, Rat::one()).sub(&yf));
    contains_one(&sys)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_polynomial;

    fn p(s: &str, r: usize) -> Polynomial {
        parse_polynomial(s, r).unwrap()
    }

    fn spoly_rat(f: &Polynomial, g: &Polynomial) -> Polynomial {
        let (lf, cf) = f.terms()[0].clone();
        let (lg, cg) = g.terms()[0].clone();
        let l: Vec<u32> = lf
            .exponents()
            .iter()
            .zip(lg.exponents())
            .map(|(a, b)| *a.max(b))
            .collect();
        let uf: Vec<u32> = l.iter().zip(lf.exponents()).map(|(a, b)| a - b).collect();
        let ug: Vec<u32> = l.iter().zip(lg.exponents()).map(|(a, b)| a - b).collect();
        f.mul(&Polynomial::monomial(uf))
            .scale(&cf.recip())
            .sub(&g.mul(&Polynomial::monomial(ug)).scale(&cg.recip()))
    }

    #[test]
    fn normal_form_examples() {
        let o = MonomialOrder::DegRevLex;
        assert_eq!(
            normal_form(&p("T1^2*T2 + T2", 2), &[p("T1", 2)], o),
            p("T2", 2)
        );
        let f = p("3*T1 - 1/2*T2", 2);
        assert_eq!(normal_form(&f, &[], o), f);
        let g = p("T1^2 - T2", 2);
        assert!(normal_form(&g, std::slice::from_ref(&g), o).is_zero());
    }

    #[test]
    fn normal_form_is_rational_remainder() {
        let o = MonomialOrder::DegRevLex;
        let r = normal_form(&p("T1^2", 2), &[p("2*T1 - T2", 2)], o);
        assert_eq!(r, p("1/4*T2^2", 2));
    }

    #[test]
    fn trivial_bases() {
        let o = MonomialOrder::DegRevLex;
        let gb = buchberger(&[p("T1", 2), p("T2", 2)], o);
        assert_eq!(gb.polynomials().len(), 2);
        assert!(buchberger(&[], o).polynomials().is_empty());
    }

    #[test]
    fn s_polynomials_reduce_to_zero() {
        for o in [MonomialOrder::DegRevLex, MonomialOrder::Lex] {
            let gb = buchberger(&[p("T1^2 - T2", 2), p("T1*T2 - T1", 2)], o);
            let g = gb.polynomials();
            for i in 0..g.len() {
                for j in i + 1..g.len() {
                    assert!(normal_form(&spoly_rat(&g[i], &g[j]), g, o).is_zero());
                }
            }
            assert!(gb.contains(&p("T1^2 - T2", 2)));
            assert!(gb.contains(&p("T1*T2 - T1", 2)));
        }
    }

    #[test]
    fn input_order_independent() {
        let o = MonomialOrder::DegRevLex;
        let a = [
            p("T1*T2 - T3^2", 3),
            p("T1^2 - T2*T3", 3),
            p("T2^2 - T1*T3", 3),
        ];
        let mut b = a.clone();
        b.reverse();
        assert_eq!(buchberger(&a, o), buchberger(&b, o));
    }

    #[test]
    fn radical_examples() {
        assert!(radical_membership(&p("T1", 1), &[p("T1^2", 1)]));
        assert!(!radical_membership(&p("T1", 2), &[p("T2", 2)]));
        assert!(!radical_membership(&p("1", 1), &[]));
        assert!(radical_membership(
            &p("T1*T2", 2),
            &[p("T1^3", 2), p("T2 - 1", 2)]
        ));
        assert!(!radical_membership(&p("T1", 2), &[p("T1^2 - T2", 2)]));
    }

    #[test]
    fn unit_ideal() {
        assert!(contains_one(&[p("T1", 2), p("T1 - 1", 2)]));
        assert!(!contains_one(&[p("T1*T2 - 1", 2)]));
        let gb = buchberger(&[p("T1^2 + 1", 1), p("T1", 1)], MonomialOrder::DegRevLex);
        assert!(gb.is_unit());
    }
}
