//! The single-vertex 2-graph semigroup.
//!
//! Generators `e1..em` and `f1..fn` are subject to the commutation relations
//! `e_i f_j = f_j' e_i'` where `(i', j') = θ(i, j)` for a permutation `θ` of
//! the index grid `m × n`. Every element has a unique representative for
//! each prescribed e/f pattern of its degree; we store the e-first one.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Generator index, 1-based.
pub type Index = u16;

/// A position `(i, j)` in the `m × n` grid.
pub type Cell = (Index, Index);

/// An ordered pair of integers: `(number of e-letters, number of f-letters)`
/// for words, or a difference of such pairs for algebra generators.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Degree {
    pub e: i64,
    pub f: i64,
}

impl Degree {
    pub const ZERO: Degree = Degree { e: 0, f: 0 };

    pub const fn new(e: i64, f: i64) -> Self {
        Degree { e, f }
    }

    /// Componentwise maximum.
    pub fn join(self, other: Degree) -> Degree {
        Degree::new(self.e.max(other.e), self.f.max(other.f))
    }

    /// Componentwise minimum.
    pub fn meet(self, other: Degree) -> Degree {
        Degree::new(self.e.min(other.e), self.f.min(other.f))
    }

    /// Componentwise `self <= other`.
    pub fn le(self, other: Degree) -> bool {
        self.e <= other.e && self.f <= other.f
    }

    pub fn is_nonnegative(self) -> bool {
        self.e >= 0 && self.f >= 0
    }

    pub fn is_zero(self) -> bool {
        self == Degree::ZERO
    }

    pub fn scale(self, k: i64) -> Degree {
        Degree::new(self.e * k, self.f * k)
    }
}

impl Add for Degree {
    type Output = Degree;
    fn add(self, rhs: Degree) -> Degree {
        Degree::new(self.e + rhs.e, self.f + rhs.f)
    }
}

impl Sub for Degree {
    type Output = Degree;
    fn sub(self, rhs: Degree) -> Degree {
        Degree::new(self.e - rhs.e, self.f - rhs.f)
    }
}

impl Neg for Degree {
    type Output = Degree;
    fn neg(self) -> Degree {
        Degree::new(-self.e, -self.f)
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.e, self.f)
    }
}

/// A single generator letter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    E(Index),
    F(Index),
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::E(i) => write!(f, "e{i}"),
            Letter::F(j) => write!(f, "f{j}"),
        }
    }
}

/// An element of the semigroup in e-first canonical form.
///
/// The derived ordering is lexicographic on `(e_block, f_block)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    e: Vec<Index>,
    f: Vec<Index>,
}

impl Word {
    /// The identity `∅`.
    pub fn empty() -> Self {
        Word::default()
    }

    pub fn e(i: Index) -> Self {
        Word {
            e: vec![i],
            f: Vec::new(),
        }
    }

    pub fn f(j: Index) -> Self {
        Word {
            e: Vec::new(),
            f: vec![j],
        }
    }

    /// Builds a word that is already in e-first form. Indices are not
    /// range-checked here; see [`Permutation2D::check_word`].
    pub fn from_blocks(e: Vec<Index>, f: Vec<Index>) -> Self {
        Word { e, f }
    }

    pub fn e_block(&self) -> &[Index] {
        &self.e
    }

    pub fn f_block(&self) -> &[Index] {
        &self.f
    }

    pub fn degree(&self) -> Degree {
        Degree::new(self.e.len() as i64, self.f.len() as i64)
    }

    pub fn len(&self) -> usize {
        self.e.len() + self.f.len()
    }

    pub fn is_empty(&self) -> bool {
        self.e.is_empty() && self.f.is_empty()
    }

    /// Letters of the canonical representative, e-letters first.
    pub fn letters(&self) -> Vec<Letter> {
        self.e
            .iter()
            .map(|&i| Letter::E(i))
            .chain(self.f.iter().map(|&j| Letter::F(j)))
            .collect()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("id");
        }
        let mut first = true;
        for l in self.letters() {
            if !first {
                f.write_str(".")?;
            }
            first = false;
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// Order in which redexes `f·e` are rewritten by [`Permutation2D::normal_form_with`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RewriteOrder {
    LeftToRight,
    RightToLeft,
    Random(u64),
}

/// The defining data `(m, n, θ)` of the 2-graph.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation2D {
    m: Index,
    n: Index,
    // row-major over (i-1, j-1)
    forward: Vec<(Index, Index)>,
    inverse: Vec<(Index, Index)>,
}

impl Permutation2D {
    /// `e_i f_j = f_j e_i`.
    pub fn identity(m: Index, n: Index) -> Result<Self> {
        let entries = grid(m, n).map(|(i, j)| ((i, j), (i, j))).collect::<Vec<_>>();
        Self::from_entries(m, n, &entries)
    }

    /// `e_i f_j = f_i e_j`; needs `m == n`.
    pub fn flip(m: Index, n: Index) -> Result<Self> {
        if m != n {
            return Err(Error::FlipRequiresSquare { m, n });
        }
        let entries = grid(m, n).map(|(i, j)| ((i, j), (j, i))).collect::<Vec<_>>();
        Self::from_entries(m, n, &entries)
    }

    /// Builds `θ` from an explicit table `(i, j) -> (i', j')`. Every pair of
    /// the grid must appear exactly once as a source and once as an image.
    pub fn from_entries(m: Index, n: Index, entries: &[(Cell, Cell)]) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::EmptyAlphabet);
        }
        let size = m as usize * n as usize;
        let mut forward: Vec<Option<(Index, Index)>> = vec![None; size];
        let mut inverse: Vec<Option<(Index, Index)>> = vec![None; size];
        let slot = |i: Index, j: Index| (i as usize - 1) * n as usize + (j as usize - 1);
        for &((i, j), (ip, jp)) in entries {
            for (a, b) in [(i, j), (ip, jp)] {
                if a == 0 || a > m || b == 0 || b > n {
                    return Err(Error::IndexOutOfRange(format!("({a},{b}) outside {m}x{n}")));
                }
            }
            let s = slot(i, j);
            if forward[s].is_some() {
                return Err(Error::NotABijection(format!("pair ({i},{j}) listed twice")));
            }
            let t = slot(ip, jp);
            if inverse[t].is_some() {
                return Err(Error::NotABijection(format!("image ({ip},{jp}) hit twice")));
            }
            forward[s] = Some((ip, jp));
            inverse[t] = Some((i, j));
        }
        let forward = forward
            .into_iter()
            .enumerate()
            .map(|(s, x)| {
                x.ok_or_else(|| {
                    Error::NotABijection(format!("pair ({},{}) missing", s / n as usize + 1, s % n as usize + 1))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let inverse = inverse.into_iter().map(|x| x.expect("bijective")).collect();
        Ok(Permutation2D { m, n, forward, inverse })
    }

    /// Resolves a builtin name (`identity` or `flip`).
    pub fn builtin(name: &str, m: Index, n: Index) -> Result<Self> {
        match name {
            "identity" | "id" => Self::identity(m, n),
            "flip" => Self::flip(m, n),
            other => Err(Error::Parse(format!("unknown builtin theta `{other}`"))),
        }
    }

    /// Parses the line-oriented θ text format:
    ///
    /// ```text
    /// m 2
    /// n 2
    /// builtin flip
    /// ```
    ///
    /// or `m·n` lines of the form `i j -> i' j'`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let m = parse_header(lines.next(), "m")?;
        let n = parse_header(lines.next(), "n")?;
        let rest: Vec<&str> = lines.collect();
        if let [single] = rest.as_slice() {
            if let Some(name) = single.strip_prefix("builtin") {
                return Self::builtin(name.trim(), m, n);
            }
        }
        if rest.len() != m as usize * n as usize {
            return Err(Error::NotABijection(format!(
                "expected {} table lines, found {}",
                m as usize * n as usize,
                rest.len()
            )));
        }
        let mut entries = Vec::with_capacity(rest.len());
        for line in rest {
            let (lhs, rhs) = line
                .split_once("->")
                .ok_or_else(|| Error::Parse(format!("expected `i j -> i' j'`, got `{line}`")))?;
            entries.push((parse_pair(lhs)?, parse_pair(rhs)?));
        }
        Self::from_entries(m, n, &entries)
    }

    pub fn m(&self) -> Index {
        self.m
    }

    pub fn n(&self) -> Index {
        self.n
    }

    /// `θ(i, j)`.
    pub fn apply(&self, i: Index, j: Index) -> (Index, Index) {
        self.forward[self.slot(i, j)]
    }

    /// `θ⁻¹(i', j')`.
    pub fn apply_inverse(&self, ip: Index, jp: Index) -> (Index, Index) {
        self.inverse[self.slot(ip, jp)]
    }

    fn slot(&self, i: Index, j: Index) -> usize {
        (i as usize - 1) * self.n as usize + (j as usize - 1)
    }

    /// Number of words of degree `d`, i.e. `m^a n^b`.
    pub fn count_words(&self, d: Degree) -> usize {
        (self.m as usize).pow(d.e as u32) * (self.n as usize).pow(d.f as u32)
    }

    pub fn check_letter(&self, l: Letter) -> Result<()> {
        match l {
            Letter::E(i) if i == 0 || i > self.m => Err(Error::IndexOutOfRange(format!("e{i} with m = {}", self.m))),
            Letter::F(j) if j == 0 || j > self.n => Err(Error::IndexOutOfRange(format!("f{j} with n = {}", self.n))),
            _ => Ok(()),
        }
    }

    pub fn check_word(&self, w: &Word) -> Result<()> {
        w.letters().into_iter().try_for_each(|l| self.check_letter(l))
    }

    /// Canonical e-first form of an arbitrary letter sequence.
    pub fn normal_form(&self, letters: &[Letter]) -> Result<Word> {
        let mut e = Vec::new();
        let mut f = Vec::new();
        for &l in letters {
            self.check_letter(l)?;
            match l {
                Letter::E(i) => e.push(self.pass_left(&mut f, i)),
                Letter::F(j) => f.push(j),
            }
        }
        Ok(Word { e, f })
    }

    /// Normal form by exhaustive single-step rewriting `f_j' e_i' -> e_i f_j`,
    /// choosing redexes in the given order. Used to witness confluence.
    pub fn normal_form_with(&self, letters: &[Letter], order: RewriteOrder) -> Result<Word> {
        letters.iter().try_for_each(|&l| self.check_letter(l))?;
        let mut seq = letters.to_vec();
        let mut rng = match order {
            RewriteOrder::Random(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
            _ => None,
        };
        loop {
            let redexes: Vec<usize> = (0..seq.len().saturating_sub(1))
                .filter(|&k| matches!((seq[k], seq[k + 1]), (Letter::F(_), Letter::E(_))))
                .collect();
            let Some(&k) = (match order {
                RewriteOrder::LeftToRight => redexes.first(),
                RewriteOrder::RightToLeft => redexes.last(),
                RewriteOrder::Random(_) => {
                    let rng = rng.as_mut().expect("seeded");
                    if redexes.is_empty() {
                        None
                    } else {
                        redexes.get(rng.gen_range(0..redexes.len()))
                    }
                }
            }) else {
                break;
            };
            let (Letter::F(jp), Letter::E(ip)) = (seq[k], seq[k + 1]) else {
                unreachable!()
            };
            let (i, j) = self.apply_inverse(ip, jp);
            seq[k] = Letter::E(i);
            seq[k + 1] = Letter::F(j);
        }
        let e = seq
            .iter()
            .filter_map(|l| if let Letter::E(i) = l { Some(*i) } else { None })
            .collect();
        let f = seq
            .iter()
            .filter_map(|l| if let Letter::F(j) = l { Some(*j) } else { None })
            .collect();
        Ok(Word { e, f })
    }

    /// Moves `e_x` leftwards through the f-block, rewriting the block in place;
    /// returns the e-letter that emerges on the left.
    fn pass_left(&self, f_block: &mut [Index], x: Index) -> Index {
        let mut x = x;
        for slot in f_block.iter_mut().rev() {
            let (i, j) = self.apply_inverse(x, *slot);
            *slot = j;
            x = i;
        }
        x
    }

    /// Moves `e_x` rightwards through the f-block; returns the e-letter that
    /// emerges on the right.
    fn pass_right(&self, f_block: &mut [Index], x: Index) -> Index {
        let mut x = x;
        for slot in f_block.iter_mut() {
            let (ip, jp) = self.apply(x, *slot);
            *slot = jp;
            x = ip;
        }
        x
    }

    /// Semigroup product `w1 · w2`.
    pub fn concat(&self, w1: &Word, w2: &Word) -> Word {
        let mut e = w1.e.clone();
        let mut f = w1.f.clone();
        e.reserve(w2.e.len());
        for &x in &w2.e {
            let y = self.pass_left(&mut f, x);
            e.push(y);
        }
        f.extend_from_slice(&w2.f);
        Word { e, f }
    }

    /// f-first representative `(f_block, e_block)` of `w`.
    pub fn to_f_first(&self, w: &Word) -> (Vec<Index>, Vec<Index>) {
        let mut f = w.f.clone();
        let mut tail = Vec::with_capacity(w.e.len());
        for &x in w.e.iter().rev() {
            tail.push(self.pass_right(&mut f, x));
        }
        tail.reverse();
        (f, tail)
    }

    /// Inverse of [`Self::to_f_first`].
    pub fn from_f_first(&self, f_block: &[Index], e_block: &[Index]) -> Word {
        self.concat(
            &Word {
                e: Vec::new(),
                f: f_block.to_vec(),
            },
            &Word {
                e: e_block.to_vec(),
                f: Vec::new(),
            },
        )
    }

    /// The unique `(w1, w2)` with `w = w1 · w2` and `d(w1) = d`.
    pub fn factor_at(&self, w: &Word, d: Degree) -> Result<(Word, Word)> {
        if !d.is_nonnegative() || !d.le(w.degree()) {
            return Err(Error::DegreeTooLarge {
                requested: d,
                available: w.degree(),
            });
        }
        let p = d.e as usize;
        let q = d.f as usize;
        if q == 0 {
            return Ok((
                Word {
                    e: w.e[..p].to_vec(),
                    f: Vec::new(),
                },
                Word {
                    e: w.e[p..].to_vec(),
                    f: w.f.clone(),
                },
            ));
        }
        let rest = Word {
            e: w.e[p..].to_vec(),
            f: w.f.clone(),
        };
        let (rf, re) = self.to_f_first(&rest);
        let prefix = Word {
            e: w.e[..p].to_vec(),
            f: rf[..q].to_vec(),
        };
        let suffix = self.from_f_first(&rf[q..], &re);
        Ok((prefix, suffix))
    }

    /// The prefix of `w` of degree `d`, if `d <= d(w)`.
    pub fn prefix(&self, w: &Word, d: Degree) -> Option<Word> {
        self.factor_at(w, d).ok().map(|(p, _)| p)
    }

    /// All `m^a n^b` words of degree `(a, b)` in lexicographic order.
    pub fn enumerate_words(&self, d: Degree) -> Vec<Word> {
        if !d.is_nonnegative() {
            return Vec::new();
        }
        let es = sequences(self.m, d.e as usize);
        let fs = sequences(self.n, d.f as usize);
        let mut out = Vec::with_capacity(es.len() * fs.len());
        for e in &es {
            for f in &fs {
                out.push(Word {
                    e: e.clone(),
                    f: f.clone(),
                });
            }
        }
        out
    }

    /// All words of degree `<= bound` (componentwise), grouped by degree.
    pub fn enumerate_up_to(&self, bound: Degree) -> Vec<Word> {
        let mut out = Vec::new();
        for a in 0..=bound.e {
            for b in 0..=bound.f {
                out.extend(self.enumerate_words(Degree::new(a, b)));
            }
        }
        out
    }

    /// Pairs `(w1, w2)` with `v·w1 = u·w2` and `d(v) + d(w1) = d(u) ∨ d(v)`,
    /// so that `s_v* s_u = Σ s_w1 s_w2*`.
    pub fn common_extensions(&self, u: &Word, v: &Word) -> Vec<(Word, Word)> {
        let du = u.degree();
        let dv = v.degree();
        let common = du.meet(dv);
        let (xu, u_rest) = self.factor_at(u, common).expect("meet is below d(u)");
        let (xv, v_rest) = self.factor_at(v, common).expect("meet is below d(v)");
        if xu != xv {
            return Vec::new();
        }
        if u_rest.is_empty() {
            return vec![(Word::empty(), v_rest)];
        }
        if v_rest.is_empty() {
            return vec![(u_rest, Word::empty())];
        }
        // d(u_rest) and d(v_rest) now have disjoint supports.
        let target = u_rest.degree();
        let mut out = Vec::new();
        for w1 in self.enumerate_words(target) {
            let z = self.concat(&v_rest, &w1);
            let (p, w2) = self.factor_at(&z, target).expect("degree fits");
            if p == u_rest {
                out.push((w1, w2));
            }
        }
        out
    }
}

fn grid(m: Index, n: Index) -> impl Iterator<Item = (Index, Index)> {
    (1..=m).flat_map(move |i| (1..=n).map(move |j| (i, j)))
}

fn sequences(alphabet: Index, len: usize) -> Vec<Vec<Index>> {
    let mut out = vec![Vec::with_capacity(len)];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (1..=alphabet).map(move |a| {
                    let mut p = prefix.clone();
                    p.push(a);
                    p
                })
            })
            .collect();
    }
    out
}

fn parse_header(line: Option<&str>, key: &str) -> Result<Index> {
    let line = line.ok_or_else(|| Error::Parse(format!("missing `{key}` line")))?;
    let mut parts = line.split_whitespace();
    match (parts.next(), parts.next(), parts.next()) {
        (Some(k), Some(v), None) if k == key => v
            .parse()
            .map_err(|_| Error::Parse(format!("bad count `{v}` for {key}"))),
        _ => Err(Error::Parse(format!("expected `{key} <int>`, got `{line}`"))),
    }
}

fn parse_pair(s: &str) -> Result<(Index, Index)> {
    let nums: Vec<&str> = s.split_whitespace().collect();
    match nums.as_slice() {
        [a, b] => Ok((
            a.parse().map_err(|_| Error::Parse(format!("bad index `{a}`")))?,
            b.parse().map_err(|_| Error::Parse(format!("bad index `{b}`")))?,
        )),
        _ => Err(Error::Parse(format!("expected two indices, got `{}`", s.trim()))),
    }
}

/// Parses a word such as `e1.f2` or `id`.
pub fn parse_word(theta: &Permutation2D, src: &str) -> Result<Word> {
    let src = src.trim();
    if src == "id" || src == "∅" {
        return Ok(Word::empty());
    }
    let letters = src
        .split('.')
        .map(|tok| parse_letter(tok.trim()))
        .collect::<Result<Vec<_>>>()?;
    theta.normal_form(&letters)
}

pub(crate) fn parse_letter(tok: &str) -> Result<Letter> {
    let (kind, digits) = tok.split_at(tok.char_indices().nth(1).map_or(tok.len(), |(k, _)| k));
    let idx: Index = digits
        .parse()
        .map_err(|_| Error::Parse(format!("bad letter `{tok}`")))?;
    match kind {
        "e" => Ok(Letter::E(idx)),
        "f" => Ok(Letter::F(idx)),
        _ => Err(Error::Parse(format!("bad letter `{tok}`"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(theta: &Permutation2D, s: &str) -> Word {
        parse_word(theta, s).unwrap()
    }

    #[test]
    fn builtins_are_bijections() {
        let id = Permutation2D::identity(2, 3).unwrap();
        assert_eq!(id.apply(2, 3), (2, 3));
        let fl = Permutation2D::flip(2, 2).unwrap();
        assert_eq!(fl.apply(1, 2), (2, 1));
        assert_eq!(fl.apply_inverse(2, 1), (1, 2));
        assert!(matches!(
            Permutation2D::flip(2, 3),
            Err(Error::FlipRequiresSquare { .. })
        ));
    }

    #[test]
    fn duplicate_image_rejected() {
        let err = Permutation2D::from_entries(1, 2, &[((1, 1), (1, 1)), ((1, 2), (1, 1))]).unwrap_err();
        assert!(matches!(err, Error::NotABijection(_)));
        let err = Permutation2D::from_entries(1, 2, &[((1, 1), (1, 1))]).unwrap_err();
        assert!(matches!(err, Error::NotABijection(_)));
        let err = Permutation2D::from_entries(1, 2, &[((1, 1), (1, 3)), ((1, 2), (1, 1))]).unwrap_err();
        assert!(matches!(err, Error::IndexOutOfRange(_)));
    }

    #[test]
    fn text_format() {
        let t = Permutation2D::parse("m 2\nn 2\nbuiltin flip\n").unwrap();
        assert_eq!(t, Permutation2D::flip(2, 2).unwrap());
        let t = Permutation2D::parse("m 1\nn 2\n1 1 -> 1 2\n1 2 -> 1 1\n").unwrap();
        assert_eq!(t.apply(1, 1), (1, 2));
        assert!(Permutation2D::parse("m 1\nn 2\n1 1 -> 1 2\n1 2 -> 1 2\n").is_err());
        assert!(Permutation2D::parse("m 1\nn 2\n1 1 -> 1 2\n").is_err());
    }

    #[test]
    fn normal_form_examples() {
        let fl = Permutation2D::flip(2, 2).unwrap();
        let nf = fl.normal_form(&[Letter::F(1), Letter::E(2)]).unwrap();
        assert_eq!(nf.to_string(), "e1.f2");
        let id = Permutation2D::identity(2, 3).unwrap();
        let nf = id.normal_form(&[Letter::F(2), Letter::E(1)]).unwrap();
        assert_eq!(nf.to_string(), "e1.f2");
        let nf = id.normal_form(&[Letter::E(1), Letter::F(1)]).unwrap();
        assert_eq!(nf.to_string(), "e1.f1");
        assert!(id.normal_form(&[Letter::F(4)]).is_err());
    }

    #[test]
    fn concat_examples() {
        let fl = Permutation2D::flip(2, 2).unwrap();
        assert_eq!(fl.concat(&Word::empty(), &w(&fl, "e1.f2")), w(&fl, "e1.f2"));
        assert_eq!(fl.concat(&Word::f(1), &Word::e(2)).to_string(), "e1.f2");
        let id = Permutation2D::identity(2, 3).unwrap();
        assert_eq!(id.concat(&w(&id, "e1.f1"), &Word::e(2)).to_string(), "e1.e2.f1");
    }

    #[test]
    fn factor_examples() {
        let fl = Permutation2D::flip(2, 2).unwrap();
        let word = w(&fl, "e1.f2");
        let (a, b) = fl.factor_at(&word, Degree::new(0, 1)).unwrap();
        assert_eq!((a.to_string(), b.to_string()), ("f1".into(), "e2".into()));
        let (a, b) = fl.factor_at(&word, Degree::new(1, 0)).unwrap();
        assert_eq!((a.to_string(), b.to_string()), ("e1".into(), "f2".into()));
        let (a, b) = fl.factor_at(&word, Degree::ZERO).unwrap();
        assert_eq!((a, b), (Word::empty(), word.clone()));
        assert!(matches!(
            fl.factor_at(&word, Degree::new(2, 0)),
            Err(Error::DegreeTooLarge { .. })
        ));
    }

    #[test]
    fn enumeration_counts() {
        let fl = Permutation2D::flip(2, 2).unwrap();
        let words: Vec<String> = fl
            .enumerate_words(Degree::new(1, 1))
            .iter()
            .map(ToString::to_string)
            .collect();
        assert_eq!(words, ["e1.f1", "e1.f2", "e2.f1", "e2.f2"]);
        assert_eq!(fl.enumerate_words(Degree::ZERO), vec![Word::empty()]);
        let id = Permutation2D::identity(2, 3).unwrap();
        assert_eq!(id.enumerate_words(Degree::new(1, 2)).len(), 18);
    }

    #[test]
    fn common_extension_examples() {
        let fl = Permutation2D::flip(2, 2).unwrap();
        let ext = fl.common_extensions(&Word::e(1), &Word::f(1));
        assert_eq!(ext, vec![(Word::e(1), Word::f(1)), (Word::e(2), Word::f(2))]);
        assert!(fl.common_extensions(&Word::e(1), &Word::e(2)).is_empty());
        let id = Permutation2D::identity(2, 3).unwrap();
        let ext = id.common_extensions(&w(&id, "e1.f1"), &Word::e(1));
        assert_eq!(ext, vec![(Word::f(1), Word::empty())]);
    }

    #[test]
    fn word_display_parse() {
        let id = Permutation2D::identity(2, 3).unwrap();
        assert_eq!(w(&id, "id"), Word::empty());
        assert_eq!(w(&id, "f3.e2").to_string(), "e2.f3");
        assert!(parse_word(&id, "g1").is_err());
        assert!(parse_word(&id, "e").is_err());
    }
}
