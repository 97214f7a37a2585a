//! Vertices and centrally symmetric diagonal orbits of the polygon with
//! `2n + 2` vertices.
//!
//! Vertices are stored as positions `p ∈ Z/(2n+2)`. The printed label of
//! position `p` is `2p` for `p ≤ n` and `2(p - n - 1)` with a bar (written
//! `~` in text) otherwise, so that the central symmetry adds a bar.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Number of polygon vertices for rank `n`.
pub fn vertex_count(n: usize) -> usize {
    2 * n + 2
}

/// Printed label of a vertex position.
pub fn vertex_label(n: usize, p: usize) -> String {
    let p = p % vertex_count(n);
    if p <= n {
        format!("{}", 2 * p)
    } else {
        format!("{}~", 2 * (p - n - 1))
    }
}

/// Parses `2k` or `2k~` into a position.
pub fn parse_vertex(n: usize, text: &str) -> Result<usize> {
    let text = text.trim();
    let (digits, barred) = match text.strip_suffix('~') {
        Some(d) => (d, true),
        None => (text, false),
    };
    let v: usize = digits
        .parse()
        .map_err(|_| Error::InvalidArgument(format!("bad vertex `{text}`")))?;
    if !v.is_multiple_of(2) || v / 2 > n {
        return Err(Error::InvalidArgument(format!(
            "vertex `{text}` is not an even label in 0..={}",
            2 * n
        )));
    }
    Ok(if barred { v / 2 + n + 1 } else { v / 2 })
}

/// Θ-orbit of a diagonal (or a side, or a diameter).
///
/// Canonical form: `span ∈ 1..=n+1` is the number of polygon edges on the
/// shorter arc, `start ∈ 0..=n` is the position (mod `n+1`) from which that
/// arc is traversed forwards. `span == 1` is a side, `span == n+1` a
/// diameter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Orbit {
    pub n: usize,
    pub start: usize,
    pub span: usize,
}

impl Orbit {
    pub fn new(n: usize, start: usize, span: usize) -> Self {
        assert!((1..=n + 1).contains(&span), "span {span} out of range");
        Self {
            n,
            start: start % (n + 1),
            span,
        }
    }

    /// The orbit of the diagonal between two distinct positions.
    pub fn from_positions(n: usize, p: usize, q: usize) -> Self {
        let nv = vertex_count(n);
        let (p, q) = (p % nv, q % nv);
        assert_ne!(p, q, "degenerate diagonal");
        let fwd = (q + nv - p) % nv;
        if fwd <= n + 1 {
            Self::new(n, p, fwd)
        } else {
            Self::new(n, q, nv - fwd)
        }
    }

    /// The diameter through position `p`.
    pub fn diameter(n: usize, p: usize) -> Self {
        Self::new(n, p, n + 1)
    }

    /// The small orbit `[j-1, j+1]` whose vertex set is the orbit of `j`.
    pub fn small(n: usize, j: usize) -> Self {
        Self::new(n, j + n, 2)
    }

    pub fn is_side(&self) -> bool {
        self.span == 1
    }

    pub fn is_diameter(&self) -> bool {
        self.span == self.n + 1
    }

    pub fn is_small(&self) -> bool {
        self.span == 2
    }

    /// Number of vertex orbits strictly inside the shorter arc.
    pub fn card(&self) -> usize {
        self.span - 1
    }

    /// Vertex orbits (residues mod `n+1`) strictly inside the shorter arc.
    pub fn interior(&self) -> Vec<usize> {
        (1..self.span)
            .map(|i| (self.start + i) % (self.n + 1))
            .collect()
    }

    /// The one or two chords in the orbit, as position pairs.
    pub fn chords(&self) -> Vec<(usize, usize)> {
        let nv = vertex_count(self.n);
        let a = (self.start, (self.start + self.span) % nv);
        if self.is_diameter() {
            vec![a]
        } else {
            let h = self.n + 1;
            vec![a, ((a.0 + h) % nv, (a.1 + h) % nv)]
        }
    }

    /// Rotation by `t` positions.
    pub fn rotate(&self, t: usize) -> Self {
        Self::new(self.n, self.start + t, self.span)
    }

    /// Representative endpoints in the lower half of the labels when
    /// possible.
    pub fn endpoints(&self) -> (usize, usize) {
        (self.start, (self.start + self.span) % vertex_count(self.n))
    }

    /// Text form `x:a,b`.
    pub fn label(&self) -> String {
        let (a, b) = self.endpoints();
        format!("x:{},{}", vertex_label(self.n, a), vertex_label(self.n, b))
    }

    pub fn parse(n: usize, text: &str) -> Result<Self> {
        let body = text.trim().strip_prefix("x:").ok_or_else(|| {
            Error::InvalidArgument(format!("orbit `{text}` must start with `x:`"))
        })?;
        let (a, b) = body
            .split_once(',')
            .ok_or_else(|| Error::InvalidArgument(format!("orbit `{text}` needs two vertices")))?;
        let (p, q) = (parse_vertex(n, a)?, parse_vertex(n, b)?);
        if p == q {
            return Err(Error::InvalidArgument(format!(
                "orbit `{text}` is degenerate"
            )));
        }
        Ok(Self::from_positions(n, p, q))
    }
}

impl fmt::Display for Orbit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

impl Serialize for Orbit {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.label())
    }
}

/// True when `x` lies strictly inside the forward arc from `a` to `b`.
fn strictly_inside(nv: usize, a: usize, b: usize, x: usize) -> bool {
    let len = (b + nv - a) % nv;
    let off = (x + nv - a) % nv;
    off > 0 && off < len
}

/// Interior crossing of two chords given by positions.
pub fn chords_cross(nv: usize, (a, b): (usize, usize), (c, d): (usize, usize)) -> bool {
    if a == c || a == d || b == c || b == d {
        return false;
    }
    strictly_inside(nv, a, b, c) != strictly_inside(nv, a, b, d)
}

/// Whether some chord of `o1` crosses some chord of `o2` in the open
/// interior. Equal orbits and shared endpoints do not count; sides never
/// cross anything.
pub fn crossing(o1: &Orbit, o2: &Orbit) -> bool {
    if o1 == o2 || o1.is_side() || o2.is_side() {
        return false;
    }
    let nv = vertex_count(o1.n);
    o1.chords()
        .iter()
        .any(|&c1| o2.chords().iter().any(|&c2| chords_cross(nv, c1, c2)))
}

/// All orbits that are not sides, in canonical order.
pub fn all_orbits(n: usize) -> Vec<Orbit> {
    let mut v: Vec<Orbit> = (2..=n + 1)
        .flat_map(|span| (0..=n).map(move |start| Orbit::new(n, start, span)))
        .collect();
    v.sort();
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labels_round_trip() {
        for n in 1..6 {
            for p in 0..vertex_count(n) {
                assert_eq!(parse_vertex(n, &vertex_label(n, p)).unwrap(), p);
            }
        }
        assert_eq!(vertex_label(3, 7), "6~");
        assert!(parse_vertex(3, "8").is_err());
        assert!(parse_vertex(3, "3").is_err());
    }

    #[test]
    fn orbit_symmetries() {
        let n = 3;
        let o = Orbit::parse(n, "x:2,0~").unwrap();
        assert_eq!(o, Orbit::parse(n, "x:0~,2").unwrap());
        assert_eq!(o, Orbit::parse(n, "x:2~,0").unwrap());
        assert_eq!(o, Orbit::parse(n, "x:0,2~").unwrap());
        // The orbit of [2, 0~] in the octagon covers the vertex orbits of 4 and 6.
        let mut inside = o.interior();
        inside.sort();
        assert_eq!(inside, vec![2, 3]);
        assert_eq!(Orbit::parse(n, "x:0,2").unwrap().span, 1);
        assert!(Orbit::parse(n, "x:4,4~").unwrap().is_diameter());
    }

    #[test]
    fn orbit_count() {
        assert_eq!(all_orbits(2).len(), 6);
        assert_eq!(all_orbits(3).len(), 12);
        assert_eq!(all_orbits(4).len(), 20);
    }

    #[test]
    fn crossing_examples() {
        let n = 3;
        let o = |s: &str| Orbit::parse(n, s).unwrap();
        assert!(crossing(&o("x:2,0~"), &o("x:4,0")));
        assert!(!crossing(&o("x:2,0~"), &o("x:2,0~")));
        assert!(crossing(&o("x:0,0~"), &o("x:2,2~")));
        assert!(!crossing(&o("x:0,4"), &o("x:4,0~")));
    }
}
