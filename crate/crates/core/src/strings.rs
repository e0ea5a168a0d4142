//! String words and string modules.
//!
//! A word is written like a path, in composition order: the rightmost letter
//! acts first. `"A0^-1 B0"` walks `2_0 → 1_{-1}` along `β*_0`, then back up to
//! the other copy of `2_0` against `α*_0`. Trivial words are written as a
//! vertex (`1@0`) and give simple modules.
//!
//! Because every composable pair of arrows lies in a relation, a valid word
//! never has two consecutive direct (or two consecutive inverse) letters that
//! compose.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::quiver::{relation_of, Arrow, Path2, QuiverWindow, Relation, Vertex};
use crate::rep::{is_isomorphic, IsoOutcome, Representation};
use crate::scalar::Field;

/// An arrow or its formal inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub arrow: Arrow,
    pub inverted: bool,
}

impl Letter {
    pub fn direct(arrow: Arrow) -> Letter {
        Letter { arrow, inverted: false }
    }

    pub fn inverse_of(arrow: Arrow) -> Letter {
        Letter { arrow, inverted: true }
    }

    pub fn inverse(self) -> Letter {
        Letter {
            inverted: !self.inverted,
            ..self
        }
    }

    /// Where the walk is before reading this letter.
    pub fn start(self) -> Vertex {
        if self.inverted {
            self.arrow.target()
        } else {
            self.arrow.source()
        }
    }

    pub fn end(self) -> Vertex {
        if self.inverted {
            self.arrow.source()
        } else {
            self.arrow.target()
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inverted {
            write!(f, "{}^-1", self.arrow)
        } else {
            write!(f, "{}", self.arrow)
        }
    }
}

impl FromStr for Letter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Letter> {
        match s.strip_suffix("^-1") {
            Some(base) => Ok(Letter::inverse_of(base.parse()?)),
            None => Ok(Letter::direct(s.parse()?)),
        }
    }
}

/// Why two consecutive letters of a walk are not allowed.
fn junction_error(walk_first: Letter, walk_second: Letter) -> Option<(String, String)> {
    if walk_second == walk_first.inverse() {
        return Some((
            format!("{} {}", walk_second, walk_first),
            "letter followed by its own inverse".into(),
        ));
    }
    let path = match (walk_first.inverted, walk_second.inverted) {
        (false, false) => Path2::new(walk_first.arrow, walk_second.arrow),
        (true, true) => Path2::new(walk_second.arrow, walk_first.arrow),
        _ => return None,
    };
    let reason = match relation_of(path)? {
        Relation::Zero(_) => format!("{path} is a zero relation"),
        Relation::Commutativity { lhs, rhs } => {
            format!("{path} is one side of the commutativity relation {lhs} - {rhs}")
        }
    };
    Some((format!("{} {}", walk_second, walk_first), reason))
}

/// A reduced, relation-avoiding walk.
///
/// `letters` are stored in written order; `basepoint` is where the walk starts,
/// i.e. the start of the rightmost letter (or the vertex of a trivial word).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StringWord {
    letters: Vec<Letter>,
    basepoint: Vertex,
}

impl StringWord {
    pub fn trivial(v: Vertex) -> StringWord {
        StringWord {
            letters: Vec::new(),
            basepoint: v,
        }
    }

    /// Validates written-order letters.
    pub fn from_letters(letters: Vec<Letter>) -> Result<StringWord> {
        let Some(last) = letters.last() else {
            return Err(Error::Parse("a nontrivial word needs at least one letter".into()));
        };
        let n = letters.len();
        // Written position of walk index i is n - 1 - i.
        let walk: Vec<Letter> = letters.iter().rev().copied().collect();
        for i in 0..walk.len().saturating_sub(1) {
            let (a, b) = (walk[i], walk[i + 1]);
            if a.end() != b.start() {
                return Err(Error::NotComposable {
                    left: b.to_string(),
                    right: a.to_string(),
                    position: n - 2 - i,
                });
            }
            if let Some((subword, reason)) = junction_error(a, b) {
                return Err(Error::ForbiddenSubword { subword, reason });
            }
        }
        Ok(StringWord {
            basepoint: last.start(),
            letters,
        })
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.letters.is_empty()
    }

    /// Letters in the order they are walked.
    pub fn walk(&self) -> impl Iterator<Item = Letter> + '_ {
        self.letters.iter().rev().copied()
    }

    /// The vertices visited, one per basis vector of the string module.
    pub fn walk_vertices(&self) -> Vec<Vertex> {
        let mut out = vec![self.basepoint];
        out.extend(self.walk().map(Letter::end));
        out
    }

    /// The same walk traversed backwards; it defines an isomorphic module.
    pub fn inverse_word(&self) -> StringWord {
        if self.is_trivial() {
            return self.clone();
        }
        let letters: Vec<Letter> = self.letters.iter().rev().map(|l| l.inverse()).collect();
        StringWord {
            basepoint: letters.last().expect("nonempty").start(),
            letters,
        }
    }

    /// Lexicographically least of the word and its inverse.
    pub fn canonical(&self) -> StringWord {
        let inv = self.inverse_word();
        if inv.letters < self.letters {
            inv
        } else {
            self.clone()
        }
    }

    pub fn is_canonical(&self) -> bool {
        self.inverse_word().letters >= self.letters
    }

    fn min_max_z(&self) -> (i64, i64) {
        let zs = self.walk_vertices().into_iter().map(|v| v.z);
        let (lo, hi) = zs.fold((i64::MAX, i64::MIN), |(lo, hi), z| (lo.min(z), hi.max(z)));
        (lo, hi)
    }
}

impl Ord for StringWord {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.letters.len(), &self.letters, self.basepoint).cmp(&(
            other.letters.len(),
            &other.letters,
            other.basepoint,
        ))
    }
}

impl PartialOrd for StringWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for StringWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "{}", self.basepoint);
        }
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromStr for StringWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<StringWord> {
        parse_string(s)
    }
}

/// Parses `"a0 B-1^-1"` style words, or a lone vertex such as `"2@-1"`.
pub fn parse_string(text: &str) -> Result<StringWord> {
    let tokens: Vec<&str> = text.split_whitespace().collect();
    if tokens.is_empty() {
        return Err(Error::BadToken {
            token: String::new(),
            position: 0,
        });
    }
    if tokens.len() == 1 && tokens[0].contains('@') {
        let v = tokens[0].parse::<Vertex>().map_err(|_| Error::BadToken {
            token: tokens[0].to_string(),
            position: 0,
        })?;
        return Ok(StringWord::trivial(v));
    }
    let letters = tokens
        .iter()
        .enumerate()
        .map(|(position, tok)| {
            tok.parse::<Letter>().map_err(|_| Error::BadToken {
                token: tok.to_string(),
                position,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    StringWord::from_letters(letters)
}

/// The string module `M[w]`: one basis vector per walk vertex, an identity
/// entry per letter.
pub fn string_module(w: &StringWord, field: Field) -> Representation {
    let verts = w.walk_vertices();
    let mut index = Vec::with_capacity(verts.len());
    let mut dims: BTreeMap<Vertex, usize> = BTreeMap::new();
    for &v in &verts {
        let d = dims.entry(v).or_insert(0);
        index.push(*d);
        *d += 1;
    }
    let mut mats: BTreeMap<Arrow, Matrix> = BTreeMap::new();
    for (i, letter) in w.walk().enumerate() {
        let a = letter.arrow;
        let m = mats
            .entry(a)
            .or_insert_with(|| Matrix::zeros(field, dims[&a.target()], dims[&a.source()]));
        let (src_pos, tgt_pos) = if letter.inverted { (i + 1, i) } else { (i, i + 1) };
        m.set(index[tgt_pos], index[src_pos], field.one());
    }
    let (lo, hi) = w.min_max_z();
    let window = QuiverWindow::new(lo, hi).expect("walk spans a valid window");
    Representation::new(field, window, dims, mats).expect("string modules are well-formed")
}

pub fn simple(v: Vertex, field: Field) -> Representation {
    string_module(&StringWord::trivial(v), field)
}

/// All canonical string words of length `<= max_len` supported in `window`,
/// sorted by length and then letters.
pub fn enumerate_strings(window: &QuiverWindow, max_len: usize) -> Vec<StringWord> {
    let mut found: BTreeSet<StringWord> = BTreeSet::new();
    for &v in window.vertices() {
        found.insert(StringWord::trivial(v));
        let mut walk = Vec::new();
        extend_walks(window, v, &mut walk, max_len, &mut found);
    }
    found.into_iter().collect()
}

fn extend_walks(
    window: &QuiverWindow,
    at: Vertex,
    walk: &mut Vec<Letter>,
    max_len: usize,
    found: &mut BTreeSet<StringWord>,
) {
    if walk.len() == max_len {
        return;
    }
    let candidates = at
        .arrows_out()
        .into_iter()
        .map(Letter::direct)
        .chain(at.arrows_in().into_iter().map(Letter::inverse_of));
    for next in candidates {
        if !window.contains_arrow(next.arrow) {
            continue;
        }
        if let Some(&prev) = walk.last() {
            if junction_error(prev, next).is_some() {
                continue;
            }
        }
        walk.push(next);
        let letters: Vec<Letter> = walk.iter().rev().copied().collect();
        let word = StringWord {
            basepoint: walk[0].start(),
            letters,
        };
        found.insert(word.canonical());
        extend_walks(window, next.end(), walk, max_len, found);
        walk.pop();
    }
}

/// Largest module [`recognize_string`] will try to match.
pub const RECOGNIZE_MAX_DIM: usize = 9;

/// Finds a string word whose module is isomorphic to `m`, if one exists with
/// support in `m`'s bounding window.
pub fn recognize_string(m: &Representation) -> Result<Option<StringWord>> {
    let total = m.total_dim();
    if total == 0 || total > RECOGNIZE_MAX_DIM {
        return Ok(None);
    }
    let trimmed = m.trimmed();
    let dims = m.dim_vector();
    for w in enumerate_strings(trimmed.window(), total - 1) {
        if w.len() != total - 1 {
            continue;
        }
        let candidate = string_module(&w, m.field());
        if candidate.dim_vector() != dims {
            continue;
        }
        if let IsoOutcome::Isomorphic(_) = is_isomorphic(&candidate, m)? {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rationals;

    #[test]
    fn parse_examples() {
        let w = parse_string("a0").unwrap();
        assert_eq!(w.letters(), &[Letter::direct(Arrow::alpha(0))]);
        let t = parse_string("1@0").unwrap();
        assert!(t.is_trivial());
        assert_eq!(t.walk_vertices(), vec![Vertex::one(0)]);
    }

    #[test]
    fn parse_errors_are_distinct() {
        assert!(matches!(
            parse_string("A0 a0"),
            Err(Error::ForbiddenSubword { ref reason, .. }) if reason.contains("commutativity")
        ));
        assert!(matches!(
            parse_string("B0 a0"),
            Err(Error::ForbiddenSubword { ref reason, .. }) if reason.contains("zero relation")
        ));
        assert!(matches!(parse_string("a0 a1"), Err(Error::NotComposable { .. })));
        assert!(matches!(
            parse_string("a0 x1"),
            Err(Error::BadToken { position: 1, .. })
        ));
        assert!(matches!(parse_string("a0^-1 a0"), Err(Error::ForbiddenSubword { .. })));
        assert!(matches!(parse_string("  "), Err(Error::BadToken { .. })));
    }

    #[test]
    fn string_module_examples() {
        let s = string_module(&parse_string("1@0").unwrap(), Q);
        assert_eq!(s.total_dim(), 1);

        let m = string_module(&parse_string("a0").unwrap(), Q);
        assert_eq!(m.dim_vector(), BTreeMap::from([(Vertex::one(0), 1), (Vertex::two(0), 1)]));
        assert_eq!(*m.mat(Arrow::alpha(0)), Matrix::identity(Q, 1));
        assert!(m.mat(Arrow::beta(0)).is_zero());

        let r = string_module(&parse_string("A0^-1 B0").unwrap(), Q);
        assert_eq!(r.total_dim(), 3);
        assert_eq!(r.dim_vector(), BTreeMap::from([(Vertex::two(0), 2), (Vertex::one(-1), 1)]));
        assert!(r.validate().is_empty());
    }

    #[test]
    fn inverse_words_give_isomorphic_modules() {
        let w = parse_string("B0 A0^-1 B0").unwrap();
        let inv = w.inverse_word();
        assert_eq!(inv.to_string(), "B0^-1 A0 B0^-1");
        let (m, n) = (string_module(&w, Q), string_module(&inv, Q));
        assert!(is_isomorphic(&m, &n).unwrap().is_iso());
        assert_eq!(w.canonical(), inv.canonical());
    }

    #[test]
    fn enumeration_counts() {
        let w = QuiverWindow::new(0, 0).unwrap();
        let words = enumerate_strings(&w, 1);
        let trivial = words.iter().filter(|w| w.is_trivial()).count();
        assert_eq!(trivial, 2);
        let len1: Vec<String> = words.iter().filter(|w| w.len() == 1).map(|w| w.to_string()).collect();
        assert_eq!(len1, vec!["a0", "b0"]);
    }

    #[test]
    fn enumerated_words_round_trip() {
        let w = QuiverWindow::new(-1, 1).unwrap();
        for word in enumerate_strings(&w, 3) {
            assert!(word.is_canonical());
            assert_eq!(parse_string(&word.to_string()).unwrap(), word);
            let m = string_module(&word, Q);
            assert!(m.validate().is_empty(), "{word}");
            assert_eq!(m.total_dim(), word.len() + 1);
        }
    }

    #[test]
    fn recognizes_syzygy_of_simple() {
        let r = string_module(&parse_string("A0^-1 B0").unwrap(), Q);
        let shuffled = string_module(&parse_string("B0^-1 A0").unwrap(), Q);
        assert_eq!(recognize_string(&shuffled).unwrap().unwrap(), parse_string("A0^-1 B0").unwrap().canonical());
        assert!(recognize_string(&r).unwrap().is_some());
    }
}
