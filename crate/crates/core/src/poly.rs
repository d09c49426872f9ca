//! Multivariate polynomials over the rationals.
//!
//! Terms are kept sorted by degree-reverse-lexicographic order, largest
//! first, so the "first term" of a polynomial is well defined. Variables are
//! written `T1, ..., Tr` in text and indexed from zero internally.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::arith::{Int, IntMatrix, Rat};
use crate::cone::Face;
use crate::error::{Error, Result};

/// Exponent vector of a monomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Degree-reverse-lexicographic comparison.
    pub fn cmp_degrevlex(&self, other: &Monomial) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            o => return o,
        }
        for (a, b) in self.0.iter().zip(&other.0).rev() {
            if a != b {
                // smaller exponent in the last differing variable is larger
                return b.cmp(a);
            }
        }
        Ordering::Equal
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    nvars: usize,
    terms: Vec<(Monomial, Rat)>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: Vec::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rat) -> Self {
        Self::from_terms(nvars, vec![(Monomial::one(nvars), c)])
    }

    /// The monomial `T^e` with coefficient one.
    pub fn monomial(exponents: Vec<u32>) -> Self {
        let n = exponents.len();
        Self::from_terms(n, vec![(Monomial::new(exponents), Rat::one())])
    }

    /// Product of the variables with the given indices.
    pub fn variable_product(nvars: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut e = vec![0u32; nvars];
        for i in indices {
            e[i] += 1;
        }
        Self::monomial(e)
    }

    /// Canonical polynomial from arbitrary terms: like terms are merged and
    /// zero coefficients dropped.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, Rat)>) -> Self {
        let mut terms: Vec<(Monomial, Rat)> = terms.into_iter().collect();
        debug_assert!(terms.iter().all(|(m, _)| m.0.len() == nvars));
        terms.sort_by(|a, b| b.0.cmp_degrevlex(&a.0));
        let mut merged: Vec<(Monomial, Rat)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match merged.last_mut() {
                Some((lm, lc)) if *lm == m => *lc += c,
                _ => merged.push((m, c)),
            }
        }
        merged.retain(|(_, c)| !c.is_zero());
        Polynomial {
            nvars,
            terms: merged,
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Monomial, Rat)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// A single term (a nonzero scalar times a monomial).
    pub fn is_term(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn is_nonzero_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one()
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        Self::from_terms(self.nvars, self.terms.iter().chain(&other.terms).cloned())
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.scale(&-Rat::one()))
    }

    pub fn scale(&self, c: &Rat) -> Polynomial {
        Self::from_terms(
            self.nvars,
            self.terms.iter().map(|(m, a)| (m.clone(), a * c)),
        )
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut out = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.push((m1.mul(m2), c1 * c2));
            }
        }
        Self::from_terms(self.nvars, out)
    }

    /// Degree vector `Q * nu` of every term, if they all agree.
    pub fn degree(&self, grading: &Grading) -> Option<Vec<Int>> {
        let mut common: Option<Vec<Int>> = None;
        for (m, _) in &self.terms {
            let d = grading.degree_of(m);
            match &common {
                None => common = Some(d),
                Some(c) if *c != d => return None,
                _ => {}
            }
        }
        Some(common.unwrap_or_else(|| vec![Int::zero(); grading.k()]))
    }

    /// Evaluates at a rational point.
    pub fn eval(&self, point: &[Rat]) -> Rat {
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.exponents()) {
                for _ in 0..e {
                    t *= x;
                }
            }
            acc += t;
        }
        acc
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || m.is_one() {
                factors.push(abs.to_string());
            }
            for (i, &e) in m.exponents().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(format!("T{}", i + 1)),
                    _ => factors.push(format!("T{}^{}", i + 1, e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

/// `f` with every variable outside `face` set to zero.
pub fn restrict_to_face(f: &Polynomial, face: &Face) -> Polynomial {
    Polynomial {
        nvars: f.nvars,
        terms: f
            .terms
            .iter()
            .filter(|(m, _)| {
                m.exponents()
                    .iter()
                    .enumerate()
                    .all(|(i, &e)| e == 0 || face.contains(i))
            })
            .cloned()
            .collect(),
    }
}

/// Restricts to `face` and renumbers the surviving variables `0..|face|`.
pub fn restrict_and_compress(f: &Polynomial, face: &Face) -> Polynomial {
    let keep: Vec<usize> = face.indices().collect();
    let restricted = restrict_to_face(f, face);
    Polynomial::from_terms(
        keep.len(),
        restricted.terms.into_iter().map(|(m, c)| {
            (
                Monomial::new(keep.iter().map(|&i| m.exponents()[i]).collect()),
                c,
            )
        }),
    )
}

/// Rows `nu_j - nu_0` for the terms `nu_1, ...` of `g` against its first term.
pub fn exponent_offsets(g: &Polynomial) -> Result<IntMatrix> {
    let Some((base, _)) = g.terms.first() else {
        return Err(Error::ZeroPolynomial);
    };
    let rows: Vec<Vec<Int>> = g.terms[1..]
        .iter()
        .map(|(m, _)| {
            m.exponents()
                .iter()
                .zip(base.exponents())
                .map(|(&a, &b)| Int::from(a as i64 - b as i64))
                .collect()
        })
        .collect();
    IntMatrix::from_rows(g.nvars, &rows)
}

pub fn is_homogeneous(f: &Polynomial, grading: &Grading) -> bool {
    f.degree(grading).is_some()
}

pub fn apply_permutation(f: &Polynomial, sigma: &Permutation) -> Polynomial {
    Polynomial::from_terms(
        f.nvars,
        f.terms.iter().map(|(m, c)| {
            let mut e = vec![0u32; f.nvars];
            let mut odd = false;
            for (i, &x) in m.exponents().iter().enumerate() {
                e[sigma.image(i)] = x;
                odd ^= sigma.is_negated(i) && x % 2 == 1;
            }
            (Monomial::new(e), if odd { -c.clone() } else { c.clone() })
        }),
    )
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ideal {
    nvars: usize,
    generators: Vec<Polynomial>,
}

impl Ideal {
    pub fn new(nvars: usize, generators: Vec<Polynomial>) -> Result<Self> {
        for g in &generators {
            if g.nvars() != nvars {
                return Err(Error::DimensionMismatch {
                    expected: nvars,
                    found: g.nvars(),
                });
            }
        }
        Ok(Ideal { nvars, generators })
    }

    pub fn zero(nvars: usize) -> Self {
        Ideal {
            nvars,
            generators: Vec::new(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    /// Indices of generators that are a single term. The ideal is assumed
    /// monomial-free; only the given generators are checked.
    pub fn monomial_generators(&self) -> Vec<usize> {
        (0..self.generators.len())
            .filter(|&i| self.generators[i].is_term())
            .collect()
    }

    /// Errors with the first generator that is not homogeneous.
    pub fn check_homogeneous(&self, grading: &Grading) -> Result<()> {
        if grading.r() != self.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                found: grading.r(),
            });
        }
        for (i, g) in self.generators.iter().enumerate() {
            if !is_homogeneous(g, grading) {
                return Err(Error::NotHomogeneous {
                    index: i + 1,
                    generator: g.to_string(),
                });
            }
        }
        Ok(())
    }

    /// Ideal file: `#` comments, a `vars <r>` header, one polynomial per line.
    pub fn parse(text: &str) -> Result<Self> {
        let mut nvars: Option<usize> = None;
        let mut gens = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = strip_comment(raw);
            if line.trim().is_empty() {
                continue;
            }
            match nvars {
                None => {
                    let mut parts = line.split_whitespace();
                    let header = parts.next();
                    let count = parts.next().and_then(|s| s.parse::<usize>().ok());
                    match (header, count, parts.next()) {
                        (Some("vars"), Some(r), None) => nvars = Some(r),
                        _ => return Err(Error::parse(lineno + 1, 1, "expected header `vars <r>`")),
                    }
                }
                Some(r) => {
                    let p = parse_polynomial(line, r).map_err(|e| match e {
                        Error::Parse {
                            column, message, ..
                        } => Error::parse(lineno + 1, column, message),
                        other => other,
                    })?;
                    gens.push(p);
                }
            }
        }
        let r = nvars.ok_or_else(|| Error::parse(1, 1, "missing `vars <r>` header"))?;
        Ideal::new(r, gens)
    }

    pub fn to_file_string(&self) -> String {
        let mut s = format!("vars {}\n", self.nvars);
        for g in &self.generators {
            s.push_str(&g.to_string());
            s.push('\n');
        }
        s
    }
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

/// Integer grading matrix `Q` of shape `k x r`; column `i` is `deg(T_i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grading {
    q: IntMatrix,
}

impl Grading {
    /// Rejects matrices whose columns do not span `Q^k`.
    pub fn new(q: IntMatrix) -> Result<Self> {
        let rank = q.rank();
        if rank < q.rows() {
            return Err(Error::DegenerateGrading {
                dim: rank,
                k: q.rows(),
            });
        }
        Ok(Grading { q })
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.q
    }

    pub fn k(&self) -> usize {
        self.q.rows()
    }

    pub fn r(&self) -> usize {
        self.q.cols()
    }

    pub fn column(&self, i: usize) -> Vec<Int> {
        self.q.column(i)
    }

    pub fn columns(&self) -> Vec<Vec<Int>> {
        (0..self.r()).map(|i| self.column(i)).collect()
    }

    pub fn degree_of(&self, m: &Monomial) -> Vec<Int> {
        (0..self.k())
            .map(|row| {
                let mut acc = Int::zero();
                for (j, &e) in m.exponents().iter().enumerate() {
                    if e != 0 {
                        acc += &self.q[(row, j)] * Int::from(e);
                    }
                }
                acc
            })
            .collect()
    }

    /// Matrix file: a `k r` header line followed by `k` rows of integers.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, strip_comment(l)))
            .filter(|(_, l)| !l.trim().is_empty());
        let (hl, header) = lines
            .next()
            .ok_or_else(|| Error::parse(1, 1, "empty matrix file"))?;
        let dims: Vec<usize> = header
            .split_whitespace()
            .map(|t| t.parse::<usize>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::parse(hl, 1, "expected header `k r`"))?;
        let [k, r] = dims[..] else {
            return Err(Error::parse(hl, 1, "expected header `k r`"));
        };
        let mut rows = Vec::with_capacity(k);
        for _ in 0..k {
            let (ln, line) = lines
                .next()
                .ok_or_else(|| Error::parse(hl, 1, format!("expected {k} rows")))?;
            let row: Vec<Int> = line
                .split_whitespace()
                .map(|t| t.parse::<Int>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| Error::parse(ln, 1, "malformed integer"))?;
            if row.len() != r {
                return Err(Error::parse(
                    ln,
                    1,
                    format!("expected {r} entries, got {}", row.len()),
                ));
            }
            rows.push(row);
        }
        if let Some((ln, _)) = lines.next() {
            return Err(Error::parse(ln, 1, "trailing content after matrix rows"));
        }
        Grading::new(IntMatrix::from_rows(r, &rows)?)
    }

    pub fn to_file_string(&self) -> String {
        let mut s = format!("{} {}\n", self.k(), self.r());
        for i in 0..self.k() {
            let row: Vec<String> = self.q.row(i).iter().map(|x| x.to_string()).collect();
            s.push_str(&row.join(" "));
            s.push('\n');
        }
        s
    }
}

/// Permutation of the variable indices, stored 0-based, optionally combined
/// with sign flips `T_i -> -T_sigma(i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
    negated: Vec<bool>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(Error::InvalidSymmetry(format!(
                    "{:?} is not a permutation of 0..{n}",
                    images
                )));
            }
            seen[i] = true;
        }
        let negated = vec![false; n];
        Ok(Permutation { images, negated })
    }

    pub fn with_signs(images: Vec<usize>, negated: Vec<bool>) -> Result<Self> {
        if negated.len() != images.len() {
            return Err(Error::InvalidSymmetry(
                "sign vector and permutation differ in length".into(),
            ));
        }
        let mut p = Self::new(images)?;
        p.negated = negated;
        Ok(p)
    }

    /// From one-line notation `sigma(1) ... sigma(r)` with 1-based entries.
    pub fn from_one_based(images: &[usize]) -> Result<Self> {
        if images.contains(&0) {
            return Err(Error::InvalidSymmetry("indices are 1-based".into()));
        }
        Self::new(images.iter().map(|&i| i - 1).collect())
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
            negated: vec![false; n],
        }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn image(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_negated(&self, i: usize) -> bool {
        self.negated[i]
    }

    pub fn apply_face(&self, face: &Face) -> Face {
        Face::from_indices(face.ambient(), face.indices().map(|i| self.images[i]))
            .expect("permutation preserves the ambient range")
    }

    /// Symmetry file: one permutation per line in 1-based one-line notation.
    pub fn parse_file(text: &str, r: usize) -> Result<Vec<Permutation>> {
        let mut out = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = strip_comment(raw);
            if line.trim().is_empty() {
                continue;
            }
            let entries: Vec<i64> = line
                .split_whitespace()
                .map(|t| t.parse::<i64>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| Error::parse(lineno + 1, 1, "malformed permutation entry"))?;
            if entries.len() != r {
                return Err(Error::parse(
                    lineno + 1,
                    1,
                    format!("expected {r} entries, got {}", entries.len()),
                ));
            }
            if entries.contains(&0) {
                return Err(Error::InvalidSymmetry("indices are 1-based".into()));
            }
            let images = entries
                .iter()
                .map(|&e| e.unsigned_abs() as usize - 1)
                .collect();
            let negated = entries.iter().map(|&e| e < 0).collect();
            out.push(Permutation::with_signs(images, negated)?);
        }
        Ok(out)
    }
}

/// Parses text like `T1*T6 - 2/3*T2^2*T5 + 4` in `r` variables.
pub fn parse_polynomial(text: &str, r: usize) -> Result<Polynomial> {
    Parser {
        src: text.as_bytes(),
        pos: 0,
        nvars: r,
    }
    .polynomial()
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    nvars: usize,
}

impl Parser<'_> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::parse(1, self.pos + 1, msg))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn digits(&mut self) -> Option<&str> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            None
        } else {
            std::str::from_utf8(&self.src[start..self.pos]).ok()
        }
    }

    fn polynomial(mut self) -> Result<Polynomial> {
        let mut terms = Vec::new();
        let mut sign = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -Rat::one()
            }
            Some(b'+') => {
                self.pos += 1;
                Rat::one()
            }
            Some(_) => Rat::one(),
            None => return self.err("empty polynomial"),
        };
        loop {
            let (m, c) = self.term()?;
            terms.push((m, c * &sign));
            match self.peek() {
                None => break,
                Some(b'+') => sign = Rat::one(),
                Some(b'-') => sign = -Rat::one(),
                Some(ch) => return self.err(format!("unexpected character `{}`", ch as char)),
            }
            self.pos += 1;
        }
        Ok(Polynomial::from_terms(self.nvars, terms))
    }

    fn term(&mut self) -> Result<(Monomial, Rat)> {
        let mut coeff = Rat::one();
        let mut exps = vec![0u32; self.nvars];
        loop {
            match self.peek() {
                Some(b'T') => {
                    self.pos += 1;
                    let Some(idx) = self.digits() else {
                        return self.err("expected variable index after `T`");
                    };
                    let idx: usize = idx.parse().unwrap_or(usize::MAX);
                    if idx == 0 || idx > self.nvars {
                        self.pos -= 1;
                        return self.err(format!(
                            "variable index {idx} out of range 1..={}",
                            self.nvars
                        ));
                    }
                    let e = self.exponent()?;
                    exps[idx - 1] += e;
                }
                Some(c) if c.is_ascii_digit() => {
                    let num: Int = self.digits().unwrap_or("0").parse().expect("digits");
                    let mut value = Rat::from_integer(num);
                    if self.src.get(self.pos) == Some(&b'/') {
                        self.pos += 1;
                        let Some(den) = self.digits() else {
                            return self.err("expected denominator");
                        };
                        let den: Int = den.parse().expect("digits");
                        if den.is_zero() {
                            return self.err("zero denominator");
                        }
                        value /= Rat::from_integer(den);
                    }
                    let e = self.exponent()?;
                    for _ in 0..e {
                        coeff *= &value;
                    }
                }
                Some(ch) => return self.err(format!("expected a factor, found `{}`", ch as char)),
                None => return self.err("expected a factor, found end of input"),
            }
            if self.peek() == Some(b'*') {
                self.pos += 1;
            } else {
                break;
            }
        }
        Ok((Monomial::new(exps), coeff))
    }

    fn exponent(&mut self) -> Result<u32> {
        if self.peek() != Some(b'^') {
            return Ok(1);
        }
        self.pos += 1;
        if self.peek() == Some(b'-') {
            return self.err("negative exponent");
        }
        match self.digits().map(|d| d.parse::<u32>()) {
            Some(Ok(e)) => Ok(e),
            _ => self.err("expected a nonnegative exponent"),
        }
    }
}

/// Pluecker ideal of `G(2, n)`: variables are the pairs `i < j`
/// in lexicographic order, so `T1 = T_{12}, T2 = T_{13}, ...`.
pub fn pluecker_ideal(n: usize) -> Result<Ideal> {
    if n < 4 {
        return Err(Error::PlueckerTooSmall(n));
    }
    let mut index = vec![vec![usize::MAX; n]; n];
    let mut r = 0;
    for i in 0..n {
        for j in i + 1..n {
            index[i][j] = r;
            r += 1;
        }
    }
    let var = |a: usize, b: usize| index[a][b];
    let mut gens = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                for l in k + 1..n {
                    let quad = |a: usize, b: usize, c: Rat| {
                        let mut e = vec![0u32; r];
                        e[a] += 1;
                        e[b] += 1;
                        (Monomial::new(e), c)
                    };
                    gens.push(Polynomial::from_terms(
                        r,
                        vec![
                            quad(var(i, j), var(k, l), Rat::one()),
                            quad(var(i, k), var(j, l), -Rat::one()),
                            quad(var(i, l), var(j, k), Rat::one()),
                        ],
                    ));
                }
            }
        }
    }
    Ideal::new(r, gens)
}

/// Signed permutations of the Pluecker coordinates induced by the
/// transposition `(1 2)` and the cycle `(1 2 ... n)` of `{1, ..., n}`.
pub fn pluecker_symmetries(n: usize) -> Result<Vec<Permutation>> {
    if n < 4 {
        return Err(Error::PlueckerTooSmall(n));
    }
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let induced = |sigma: &dyn Fn(usize) -> usize| {
        let mut images = Vec::with_capacity(pairs.len());
        let mut negated = Vec::with_capacity(pairs.len());
        for &(i, j) in &pairs {
            let (a, b) = (sigma(i), sigma(j));
            let target = (a.min(b), a.max(b));
            images.push(
                pairs
                    .iter()
                    .position(|&p| p == target)
                    .expect("pair exists"),
            );
            negated.push(a > b);
        }
        Permutation::with_signs(images, negated)
    };
    let swap = |i: usize| match i {
        0 => 1,
        1 => 0,
        _ => i,
    };
    let cycle = |i: usize| (i + 1) % n;
    Ok(vec![induced(&swap)?, induced(&cycle)?])
}

/// The grading matrices of the Grassmannian examples `G(2, n)`, `n = 4, 5, 6`.
pub fn grassmannian_grading(n: usize) -> Result<Grading> {
    let rows: Vec<Vec<i64>> = match n {
        4 => vec![
            vec![1, 0, 0, 1, 1, 0],
            vec![0, 1, 0, 1, 0, 1],
            vec![0, 0, 1, 0, 1, 1],
        ],
        5 => vec![
            vec![1, 0, 0, 0, 1, 1, 1, 0, 0, 0],
            vec![0, 1, 0, 0, 1, 0, 0, 1, 1, 0],
            vec![0, 0, 1, 0, 0, 1, 0, 1, 0, 1],
            vec![0, 0, 0, 1, 0, 0, 1, 0, 1, 1],
        ],
        6 => vec![
            vec![1, 0, 0, 0, 0, 1, 1, 1, 1, 0, 0, 0, 0, 0, 0],
            vec![0, 1, 0, 0, 0, 1, 0, 0, 0, 1, 1, 1, 0, 0, 0],
            vec![0, 0, 1, 0, 0, 0, 1, 0, 0, 1, 0, 0, 1, 1, 0],
            vec![0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 1, 0, 1, 0, 1],
            vec![0, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 1, 0, 1, 1],
        ],
        _ => return Err(Error::UnsupportedFixture(n)),
    };
    let r = rows[0].len();
    Grading::new(IntMatrix::from_i64_rows(r, &rows)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, r: usize) -> Polynomial {
        parse_polynomial(s, r).unwrap()
    }

    fn face(r: usize, one_based: &[usize]) -> Face {
        Face::from_indices(r, one_based.iter().map(|i| i - 1)).unwrap()
    }

    #[test]
    fn parses_pluecker_generator() {
        let f = p("T1*T6 - T2*T5 + T3*T4", 6);
        assert_eq!(f.len(), 3);
        assert_eq!(f.to_string(), "T3*T4 - T2*T5 + T1*T6");
        assert_eq!(p(&f.to_string(), 6), f);
    }

    #[test]
    fn merges_like_terms() {
        let f = p("2*T1^2 - T1^2", 1);
        assert_eq!(f, Polynomial::monomial(vec![2]));
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            parse_polynomial("T0", 3),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_polynomial("T4", 3),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_polynomial("T1^-1", 3),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_polynomial("T1 ++ T2", 3),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(parse_polynomial("", 3), Err(Error::Parse { .. })));
        match parse_polynomial("T1 + x", 2) {
            Err(Error::Parse { column, .. }) => assert_eq!(column, 6),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn parses_rationals_and_constants() {
        let f = p("-3/6*T2 + 4 - 4 + 2^3", 2);
        assert_eq!(f.to_string(), "-1/2*T2 + 8");
        assert_eq!(p("0", 2), Polynomial::zero(2));
    }

    #[test]
    fn restriction() {
        let f = p("T1*T6 - T2*T5 + T3*T4", 6);
        assert_eq!(restrict_to_face(&f, &face(6, &[1, 6])), p("T1*T6", 6));
        assert_eq!(
            restrict_to_face(&f, &face(6, &[1, 2, 5, 6])),
            p("T1*T6 - T2*T5", 6)
        );
        assert_eq!(restrict_to_face(&f, &Face::full(6)), f);
        let c = restrict_and_compress(&f, &face(6, &[1, 2, 5, 6]));
        assert_eq!(c, p("T1*T4 - T2*T3", 4));
    }

    #[test]
    fn offsets() {
        assert_eq!(exponent_offsets(&p("T1*T2", 2)).unwrap().rows(), 0);
        let m = exponent_offsets(&p("T1 - T2", 2)).unwrap();
        assert_eq!(m, IntMatrix::from_i64_rows(2, &[vec![-1, 1]]).unwrap());
        let m = exponent_offsets(&p("T1*T6 - T2*T5 + T3*T4", 6)).unwrap();
        assert_eq!((m.rows(), m.cols()), (2, 6));
        assert_eq!(m.rank(), 2);
        assert!(matches!(
            exponent_offsets(&Polynomial::zero(2)),
            Err(Error::ZeroPolynomial)
        ));
    }

    #[test]
    fn homogeneity() {
        let q = grassmannian_grading(4).unwrap();
        let f = p("T1*T6 - T2*T5 + T3*T4", 6);
        assert!(is_homogeneous(&f, &q));
        assert_eq!(
            f.degree(&q).unwrap(),
            vec![Int::one(), Int::one(), Int::one()]
        );
        let q1 = Grading::new(IntMatrix::from_i64_rows(1, &[vec![1]]).unwrap()).unwrap();
        assert!(!is_homogeneous(&p("T1 + T1^2", 1), &q1));
        assert!(is_homogeneous(&p("5", 1), &q1));
        assert!(is_homogeneous(&Polynomial::zero(1), &q1));
    }

    #[test]
    fn permutations() {
        let f = p("T1 + 2*T2*T3^2", 3);
        assert_eq!(apply_permutation(&f, &Permutation::identity(3)), f);
        let swap = Permutation::from_one_based(&[2, 1, 3]).unwrap();
        assert_eq!(apply_permutation(&p("T1", 3), &swap), p("T2", 3));
        assert_eq!(apply_permutation(&apply_permutation(&f, &swap), &swap), f);
        assert!(Permutation::from_one_based(&[1, 1, 2]).is_err());
    }

    #[test]
    fn pluecker_sizes() {
        let a4 = pluecker_ideal(4).unwrap();
        assert_eq!(a4.nvars(), 6);
        assert_eq!(a4.generators(), &[p("T1*T6 - T2*T5 + T3*T4", 6)]);
        let a5 = pluecker_ideal(5).unwrap();
        assert_eq!((a5.nvars(), a5.generators().len()), (10, 5));
        let a6 = pluecker_ideal(6).unwrap();
        assert_eq!((a6.nvars(), a6.generators().len()), (15, 15));
        assert!(matches!(pluecker_ideal(3), Err(Error::PlueckerTooSmall(3))));
        for n in 4..=6 {
            let q = grassmannian_grading(n).unwrap();
            pluecker_ideal(n).unwrap().check_homogeneous(&q).unwrap();
        }
    }

    #[test]
    fn ideal_file_roundtrip() {
        let text = "# G(2,4)\nvars 6\nT1*T6 - T2*T5 + T3*T4  # the relation\n\n";
        let a = Ideal::parse(text).unwrap();
        assert_eq!(a, pluecker_ideal(4).unwrap());
        assert_eq!(Ideal::parse(&a.to_file_string()).unwrap(), a);
        match Ideal::parse("vars 2\nT1 + T3\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
        assert!(Ideal::parse("T1\n").is_err());
    }

    #[test]
    fn matrix_file() {
        let q = grassmannian_grading(5).unwrap();
        assert_eq!(Grading::parse(&q.to_file_string()).unwrap(), q);
        assert!(matches!(
            Grading::parse("2 2\n1 0\n2 0\n"),
            Err(Error::DegenerateGrading { .. })
        ));
        assert!(matches!(
            Grading::parse("2 2\n1 0\n"),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn symmetry_file() {
        let perms = Permutation::parse_file("# swap\n2 1 3\n1 2 3\n", 3).unwrap();
        assert_eq!(perms.len(), 2);
        assert_eq!(perms[0].image(0), 1);
        assert!(Permutation::parse_file("1 2\n", 3).is_err());
        let signed = Permutation::parse_file("-2 1 3\n", 3).unwrap();
        assert_eq!(
            apply_permutation(&p("T1*T3 + T1^2", 3), &signed[0]),
            p("T2^2 - T2*T3", 3)
        );
    }

    #[test]
    fn pluecker_generators_permute_up_to_sign() {
        for n in 4..=6 {
            let a = pluecker_ideal(n).unwrap();
            for sigma in pluecker_symmetries(n).unwrap() {
                for g in a.generators() {
                    let h = apply_permutation(g, &sigma);
                    assert!(a
                        .generators()
                        .iter()
                        .any(|x| *x == h || *x == h.scale(&-Rat::one())));
                }
            }
        }
    }
}
