//! Sets of boundary colorings and their relational algebra.

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use crate::embedding::VertexId;
use crate::error::{Error, Result};
use crate::lists::Color;

/// The colorings of an ordered boundary that extend to some region.
///
/// Vertex ids name boundary positions only; the caller decides which map
/// they refer to.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ColoringProfile {
    boundary: Vec<VertexId>,
    colorings: BTreeSet<Vec<Color>>,
}

impl ColoringProfile {
    pub fn new(boundary: Vec<VertexId>, colorings: impl IntoIterator<Item = Vec<Color>>) -> Result<Self> {
        let mut sorted = boundary.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != boundary.len() {
            return Err(Error::BoundaryMismatch(format!("repeated boundary vertex in {boundary:?}")));
        }
        let colorings: BTreeSet<Vec<Color>> = colorings.into_iter().collect();
        if let Some(bad) = colorings.iter().find(|c| c.len() != boundary.len()) {
            return Err(Error::BoundaryMismatch(format!("tuple {bad:?} does not match boundary {boundary:?}")));
        }
        Ok(ColoringProfile { boundary, colorings })
    }

    /// The profile with no boundary holding the empty tuple iff `feasible`.
    pub fn trivial(feasible: bool) -> Self {
        let colorings = if feasible { BTreeSet::from([Vec::new()]) } else { BTreeSet::new() };
        ColoringProfile { boundary: Vec::new(), colorings }
    }

    pub fn boundary(&self) -> &[VertexId] {
        &self.boundary
    }

    pub fn colorings(&self) -> &BTreeSet<Vec<Color>> {
        &self.colorings
    }

    pub fn len(&self) -> usize {
        self.colorings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colorings.is_empty()
    }

    pub fn contains(&self, tuple: &[Color]) -> bool {
        self.colorings.contains(tuple)
    }

    fn position(&self, v: VertexId) -> Option<usize> {
        self.boundary.iter().position(|&b| b == v)
    }

    /// Restriction to `keep`, which must be a subset of the boundary; the
    /// result follows the order of `keep`.
    pub fn project(&self, keep: &[VertexId]) -> Result<Self> {
        let idx = keep
            .iter()
            .map(|&v| {
                self.position(v).ok_or_else(|| Error::BoundaryMismatch(format!("vertex {v} not on the boundary")))
            })
            .collect::<Result<Vec<_>>>()?;
        let colorings: Vec<Vec<Color>> = self.colorings.iter().map(|t| idx.iter().map(|&i| t[i]).collect()).collect();
        ColoringProfile::new(keep.to_vec(), colorings)
    }

    /// Relabels boundary vertices through `f`.
    pub fn relabel(&self, f: impl Fn(VertexId) -> VertexId) -> Result<Self> {
        ColoringProfile::new(self.boundary.iter().map(|&v| f(v)).collect(), self.colorings.iter().cloned())
    }

    /// Natural join over the common boundary vertices: the boundary is
    /// this profile's followed by the other's new vertices.
    pub fn join(&self, other: &Self) -> Self {
        let shared: Vec<(usize, usize)> = other
            .boundary
            .iter()
            .enumerate()
            .filter_map(|(j, &v)| self.position(v).map(|i| (i, j)))
            .collect();
        let fresh: Vec<usize> =
            (0..other.boundary.len()).filter(|&j| !shared.iter().any(|&(_, sj)| sj == j)).collect();
        let mut index: HashMap<Vec<Color>, Vec<&Vec<Color>>> = HashMap::new();
        for t in &other.colorings {
            index.entry(shared.iter().map(|&(_, j)| t[j]).collect()).or_default().push(t);
        }
        let mut colorings = BTreeSet::new();
        for s in &self.colorings {
            let key: Vec<Color> = shared.iter().map(|&(i, _)| s[i]).collect();
            if let Some(matches) = index.get(&key) {
                for t in matches {
                    let mut row = s.clone();
                    row.extend(fresh.iter().map(|&j| t[j]));
                    colorings.insert(row);
                }
            }
        }
        let mut boundary = self.boundary.clone();
        boundary.extend(fresh.iter().map(|&j| other.boundary[j]));
        ColoringProfile { boundary, colorings }
    }

    /// Keeps the tuples satisfying `pred`.
    pub fn filter(&self, pred: impl Fn(&[Color]) -> bool) -> Self {
        ColoringProfile {
            boundary: self.boundary.clone(),
            colorings: self.colorings.iter().filter(|t| pred(t)).cloned().collect(),
        }
    }
}

/// Composes a profile over `A ∪ B` with one over `B ∪ C` into the profile
/// over `A ∪ C` of pairs `(a, c)` with some `b` such that `(a, b)` and
/// `(b, c)` are both present. `shared` is B and must be exactly the common
/// part of the two boundaries.
pub fn compose_profiles(left: &ColoringProfile, right: &ColoringProfile, shared: &[VertexId]) -> Result<ColoringProfile> {
    let mut common: Vec<VertexId> = left.boundary.iter().copied().filter(|v| right.boundary.contains(v)).collect();
    let mut want = shared.to_vec();
    common.sort_unstable();
    want.sort_unstable();
    if common != want {
        return Err(Error::BoundaryMismatch(format!(
            "declared shared boundary {shared:?} but the profiles share {common:?}"
        )));
    }
    let joined = left.join(right);
    let keep: Vec<VertexId> = joined.boundary.iter().copied().filter(|v| !shared.contains(v)).collect();
    joined.project(&keep)
}
