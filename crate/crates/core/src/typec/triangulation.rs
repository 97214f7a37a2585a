//! Centrally symmetric triangulations and flips.

use std::collections::{hash_map::Entry, BTreeSet, HashMap, VecDeque};

use crate::error::{Error, Result};

use super::polygon::{all_orbits, crossing, vertex_count, Orbit};

/// A centrally symmetric triangulation, stored as its `n` diagonal orbits in
/// cluster order (position `k` holds the orbit of the `k`-th variable).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CSTriangulation {
    pub n: usize,
    pub orbits: Vec<Orbit>,
}

impl CSTriangulation {
    pub fn new(n: usize, orbits: Vec<Orbit>) -> Result<Self> {
        let t = Self { n, orbits };
        t.check()?;
        Ok(t)
    }

    /// The triangulation of the initial seed: all diagonals from vertex
    /// `2n~` (position `2n+1`) to `2k`, `k = 1..n`.
    pub fn initial(n: usize) -> Self {
        let last = vertex_count(n) - 1;
        Self {
            n,
            orbits: (1..=n).map(|k| Orbit::from_positions(n, last, k)).collect(),
        }
    }

    pub fn check(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Invariant(m));
        if self.orbits.len() != self.n {
            return bad(format!("{} orbits for rank {}", self.orbits.len(), self.n));
        }
        if self.orbits.iter().any(Orbit::is_side) {
            return bad("a side is not a diagonal".into());
        }
        let set: BTreeSet<_> = self.orbits.iter().collect();
        if set.len() != self.n {
            return bad("repeated orbit".into());
        }
        if self.orbits.iter().filter(|o| o.is_diameter()).count() != 1 {
            return bad("a triangulation needs exactly one diameter".into());
        }
        for (i, a) in self.orbits.iter().enumerate() {
            for b in &self.orbits[i + 1..] {
                if crossing(a, b) {
                    return bad(format!("{a} crosses {b}"));
                }
            }
        }
        Ok(())
    }

    /// Canonical (sorted) orbit set.
    pub fn key(&self) -> Vec<Orbit> {
        let mut v = self.orbits.clone();
        v.sort();
        v
    }

    pub fn contains(&self, o: &Orbit) -> bool {
        self.orbits.contains(o)
    }

    /// Replaces the orbit at index `k` by the unique other orbit compatible
    /// with the remaining ones.
    pub fn flip_at(&self, k: usize) -> Result<Self> {
        let old = self.orbits[k];
        let rest: Vec<&Orbit> = self
            .orbits
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != k)
            .map(|(_, o)| o)
            .collect();
        let candidates: Vec<Orbit> = all_orbits(self.n)
            .into_iter()
            .filter(|o| *o != old && !rest.contains(&o))
            .filter(|o| rest.iter().all(|r| !crossing(o, r)))
            .filter(|o| old.is_diameter() == o.is_diameter())
            .collect();
        match candidates.as_slice() {
            [new] => {
                let mut orbits = self.orbits.clone();
                orbits[k] = *new;
                Ok(Self { n: self.n, orbits })
            }
            _ => Err(Error::Invariant(format!(
                "flip of {old} has {} candidates",
                candidates.len()
            ))),
        }
    }

    pub fn flip(&self, o: &Orbit) -> Result<Self> {
        let k =
            self.orbits.iter().position(|x| x == o).ok_or_else(|| {
                Error::InvalidArgument(format!("{o} is not in the triangulation"))
            })?;
        self.flip_at(k)
    }
}

/// All centrally symmetric triangulations reachable by flips from the
/// initial one, in BFS order.
pub fn flip_closure(n: usize) -> Result<Vec<CSTriangulation>> {
    let start = CSTriangulation::initial(n);
    let mut seen: HashMap<Vec<Orbit>, usize> = HashMap::new();
    seen.insert(start.key(), 0);
    let mut out = vec![start];
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for k in 0..n {
            let t = out[i].flip_at(k)?;
            if let Entry::Vacant(e) = seen.entry(t.key()) {
                e.insert(out.len());
                queue.push_back(out.len());
                out.push(t);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn initial_is_valid() {
        for n in 1..6 {
            CSTriangulation::initial(n).check().unwrap();
        }
    }

    #[test]
    fn flip_is_an_involution() {
        for n in 1..5 {
            for t in flip_closure(n).unwrap() {
                for k in 0..n {
                    assert_eq!(t.flip_at(k).unwrap().flip_at(k).unwrap(), t);
                }
            }
        }
    }

    #[test]
    fn diameter_flip_in_octagon() {
        let t = CSTriangulation::initial(3);
        let d = Orbit::parse(3, "x:6,6~").unwrap();
        let f = t.flip(&d).unwrap();
        assert!(f.contains(&Orbit::parse(3, "x:4,4~").unwrap()));
        assert!(t.flip(&Orbit::parse(3, "x:0,4").unwrap()).is_err());
    }

    #[test]
    fn closure_counts() {
        let counts: Vec<usize> = (1..=4).map(|n| flip_closure(n).unwrap().len()).collect();
        assert_eq!(counts, vec![2, 6, 20, 70]);
    }
}
