//! Finite windows of the repetitive Kronecker quiver.
//!
//! For every integer `z` there are vertices `1_z`, `2_z`, arrows
//! `α_z, β_z : 1_z → 2_z` and `α*_z, β*_z : 2_z → 1_{z-1}`. The relation ideal
//! is generated by the commutativity relations
//!
//! ```text
//! α*_z α_z − β*_z β_z        α_{z-1} α*_z − β_{z-1} β*_z
//! ```
//!
//! together with the mixed zero relations `α*_z β_z`, `β*_z α_z`,
//! `α_{z-1} β*_z`, `β_{z-1} α*_z`. Every composable pair of arrows lies in
//! exactly one of these relations.
//!
//! Text names: `a{z}`, `b{z}`, `A{z}`, `B{z}` for `α_z`, `β_z`, `α*_z`, `β*_z`;
//! `1@{z}`, `2@{z}` for vertices.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Layer {
    One,
    Two,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vertex {
    pub z: i64,
    pub layer: Layer,
}

impl Vertex {
    pub fn one(z: i64) -> Vertex {
        Vertex { z, layer: Layer::One }
    }

    pub fn two(z: i64) -> Vertex {
        Vertex { z, layer: Layer::Two }
    }

    pub fn shifted(self, k: i64) -> Vertex {
        Vertex { z: self.z + k, ..self }
    }

    pub fn arrows_out(self) -> [Arrow; 2] {
        match self.layer {
            Layer::One => [Arrow::alpha(self.z), Arrow::beta(self.z)],
            Layer::Two => [Arrow::alpha_star(self.z), Arrow::beta_star(self.z)],
        }
    }

    pub fn arrows_in(self) -> [Arrow; 2] {
        match self.layer {
            Layer::One => [Arrow::alpha_star(self.z + 1), Arrow::beta_star(self.z + 1)],
            Layer::Two => [Arrow::alpha(self.z), Arrow::beta(self.z)],
        }
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l = match self.layer {
            Layer::One => 1,
            Layer::Two => 2,
        };
        write!(f, "{l}@{}", self.z)
    }
}

impl FromStr for Vertex {
    type Err = Error;

    fn from_str(s: &str) -> Result<Vertex> {
        let bad = || Error::Parse(format!("invalid vertex name {s:?}"));
        let (layer, z) = s.trim().split_once('@').ok_or_else(bad)?;
        let z: i64 = z.parse().map_err(|_| bad())?;
        match layer {
            "1" => Ok(Vertex::one(z)),
            "2" => Ok(Vertex::two(z)),
            _ => Err(bad()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ArrowKind {
    Alpha,
    Beta,
    AlphaStar,
    BetaStar,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Arrow {
    pub kind: ArrowKind,
    pub z: i64,
}

impl Arrow {
    pub fn alpha(z: i64) -> Arrow {
        Arrow { kind: ArrowKind::Alpha, z }
    }

    pub fn beta(z: i64) -> Arrow {
        Arrow { kind: ArrowKind::Beta, z }
    }

    pub fn alpha_star(z: i64) -> Arrow {
        Arrow { kind: ArrowKind::AlphaStar, z }
    }

    pub fn beta_star(z: i64) -> Arrow {
        Arrow { kind: ArrowKind::BetaStar, z }
    }

    pub fn source(self) -> Vertex {
        match self.kind {
            ArrowKind::Alpha | ArrowKind::Beta => Vertex::one(self.z),
            ArrowKind::AlphaStar | ArrowKind::BetaStar => Vertex::two(self.z),
        }
    }

    pub fn target(self) -> Vertex {
        match self.kind {
            ArrowKind::Alpha | ArrowKind::Beta => Vertex::two(self.z),
            ArrowKind::AlphaStar | ArrowKind::BetaStar => Vertex::one(self.z - 1),
        }
    }

    pub fn shifted(self, k: i64) -> Arrow {
        Arrow { z: self.z + k, ..self }
    }
}

impl fmt::Display for Arrow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self.kind {
            ArrowKind::Alpha => 'a',
            ArrowKind::Beta => 'b',
            ArrowKind::AlphaStar => 'A',
            ArrowKind::BetaStar => 'B',
        };
        write!(f, "{c}{}", self.z)
    }
}

impl FromStr for Arrow {
    type Err = Error;

    fn from_str(s: &str) -> Result<Arrow> {
        let s = s.trim();
        let bad = || Error::Parse(format!("invalid arrow name {s:?}"));
        let mut chars = s.chars();
        let kind = match chars.next() {
            Some('a') => ArrowKind::Alpha,
            Some('b') => ArrowKind::Beta,
            Some('A') => ArrowKind::AlphaStar,
            Some('B') => ArrowKind::BetaStar,
            _ => return Err(bad()),
        };
        let z: i64 = chars.as_str().parse().map_err(|_| bad())?;
        Ok(Arrow { kind, z })
    }
}

/// A path of length two: `first` is applied first, so the path is `second ∘ first`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path2 {
    pub first: Arrow,
    pub second: Arrow,
}

impl Path2 {
    pub fn new(first: Arrow, second: Arrow) -> Path2 {
        debug_assert_eq!(first.target(), second.source());
        Path2 { first, second }
    }

    pub fn source(&self) -> Vertex {
        self.first.source()
    }

    pub fn target(&self) -> Vertex {
        self.second.target()
    }
}

impl fmt::Display for Path2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.second, self.first)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Relation {
    /// `lhs − rhs` lies in the ideal.
    Commutativity { lhs: Path2, rhs: Path2 },
    Zero(Path2),
}

impl Relation {
    pub fn paths(&self) -> Vec<Path2> {
        match self {
            Relation::Commutativity { lhs, rhs } => vec![*lhs, *rhs],
            Relation::Zero(p) => vec![*p],
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Relation::Commutativity { lhs, rhs } => write!(f, "{lhs} - {rhs}"),
            Relation::Zero(p) => write!(f, "{p}"),
        }
    }
}

/// All relations whose paths start at the given vertex.
pub fn relations_from(v: Vertex) -> [Relation; 3] {
    let z = v.z;
    match v.layer {
        Layer::One => [
            Relation::Commutativity {
                lhs: Path2::new(Arrow::alpha(z), Arrow::alpha_star(z)),
                rhs: Path2::new(Arrow::beta(z), Arrow::beta_star(z)),
            },
            Relation::Zero(Path2::new(Arrow::beta(z), Arrow::alpha_star(z))),
            Relation::Zero(Path2::new(Arrow::alpha(z), Arrow::beta_star(z))),
        ],
        Layer::Two => [
            Relation::Commutativity {
                lhs: Path2::new(Arrow::alpha_star(z), Arrow::alpha(z - 1)),
                rhs: Path2::new(Arrow::beta_star(z), Arrow::beta(z - 1)),
            },
            Relation::Zero(Path2::new(Arrow::beta_star(z), Arrow::alpha(z - 1))),
            Relation::Zero(Path2::new(Arrow::alpha_star(z), Arrow::beta(z - 1))),
        ],
    }
}

/// The relation containing a composable pair, if any (there is always exactly one).
pub fn relation_of(path: Path2) -> Option<Relation> {
    relations_from(path.source()).into_iter().find(|r| r.paths().contains(&path))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuiverWindow {
    z_min: i64,
    z_max: i64,
    vertices: Vec<Vertex>,
    arrows: Vec<Arrow>,
    relations: Vec<Relation>,
}

impl QuiverWindow {
    pub fn new(z_min: i64, z_max: i64) -> Result<QuiverWindow> {
        if z_min > z_max {
            return Err(Error::InvalidWindow(z_min, z_max));
        }
        let in_range = |v: Vertex| (z_min..=z_max).contains(&v.z);
        let mut vertices = Vec::new();
        let mut arrows = Vec::new();
        for z in z_min..=z_max {
            vertices.push(Vertex::one(z));
            vertices.push(Vertex::two(z));
        }
        vertices.sort();
        for &v in &vertices {
            for a in v.arrows_out() {
                if in_range(a.target()) {
                    arrows.push(a);
                }
            }
        }
        arrows.sort();
        let relations = vertices
            .iter()
            .flat_map(|&v| relations_from(v))
            .filter(|r| r.paths().iter().all(|p| in_range(p.target())))
            .collect();
        Ok(QuiverWindow {
            z_min,
            z_max,
            vertices,
            arrows,
            relations,
        })
    }

    pub fn z_min(&self) -> i64 {
        self.z_min
    }

    pub fn z_max(&self) -> i64 {
        self.z_max
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn contains_vertex(&self, v: Vertex) -> bool {
        (self.z_min..=self.z_max).contains(&v.z)
    }

    pub fn contains_arrow(&self, a: Arrow) -> bool {
        self.contains_vertex(a.source()) && self.contains_vertex(a.target())
    }

    /// Every ordered composable pair of arrows inside the window.
    pub fn paths_of_length_2(&self) -> Vec<Path2> {
        let mut out = Vec::new();
        for &a in &self.arrows {
            for b in a.target().arrows_out() {
                if self.contains_arrow(b) {
                    out.push(Path2::new(a, b));
                }
            }
        }
        out
    }

    /// Smallest window containing both.
    pub fn union(&self, other: &QuiverWindow) -> QuiverWindow {
        QuiverWindow::new(self.z_min.min(other.z_min), self.z_max.max(other.z_max))
            .expect("union of valid windows is valid")
    }

    pub fn grown(&self, below: i64, above: i64) -> QuiverWindow {
        QuiverWindow::new(self.z_min - below, self.z_max + above).expect("growing keeps order")
    }

    pub fn shifted(&self, k: i64) -> QuiverWindow {
        QuiverWindow::new(self.z_min + k, self.z_max + k).expect("shift keeps order")
    }

    pub fn containing(&self, v: Vertex) -> QuiverWindow {
        QuiverWindow::new(self.z_min.min(v.z), self.z_max.max(v.z)).expect("valid window")
    }
}

/// `make_window(z_min, z_max)`.
pub fn make_window(z_min: i64, z_max: i64) -> Result<QuiverWindow> {
    QuiverWindow::new(z_min, z_max)
}
