//! The surface carrying a braid diagram: a ribbon graph with one disk per
//! classical or singular crossing and one annulus at each end of the braid.
//! Virtual crossings add no vertex; the two bands pass each other.
//!
//! Drawing: strands run left to right, position 1 on top. At a crossing the
//! half-edges in counterclockwise order are NE, NW, SW, SE (outgoing top,
//! incoming top, incoming bottom, outgoing bottom). The left annulus sees its
//! attachments counterclockwise from the bottom position up, the right one
//! from the top position down.

use std::fmt;

use serde::Serialize;

use crate::braid::{BraidWord, Generator};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VertexKind {
    /// A disk around a crossing; contributes 1 to χ.
    Crossing,
    /// An annulus at one end of the braid; contributes 0 to χ and carries
    /// one extra boundary circle.
    BoundaryCircle,
}

impl VertexKind {
    fn weight(self) -> i64 {
        match self {
            VertexKind::Crossing => 1,
            VertexKind::BoundaryCircle => 0,
        }
    }
}

/// Half-edges `0..len`. `rotation[h]` is the next half-edge counterclockwise
/// around the same vertex; `pairing[h]` is the other end of h's edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RibbonGraph {
    pub rotation: Vec<usize>,
    pub pairing: Vec<usize>,
    pub vertex_of: Vec<usize>,
    pub vertex_kind: Vec<VertexKind>,
}

struct Builder {
    g: RibbonGraph,
}

impl Builder {
    /// Adds a vertex whose half-edges, in counterclockwise order, are the
    /// returned indices.
    fn vertex(&mut self, kind: VertexKind, degree: usize) -> Vec<usize> {
        let v = self.g.vertex_kind.len();
        self.g.vertex_kind.push(kind);
        let first = self.g.rotation.len();
        let hs: Vec<usize> = (first..first + degree).collect();
        for k in 0..degree {
            self.g.rotation.push(hs[(k + 1) % degree]);
            self.g.pairing.push(usize::MAX);
            self.g.vertex_of.push(v);
        }
        hs
    }

    fn edge(&mut self, a: usize, b: usize) {
        self.g.pairing[a] = b;
        self.g.pairing[b] = a;
    }
}

/// Ribbon graph of a letter sequence on `n ≥ 1` strands.
pub fn ribbon_of_letters(n: usize, letters: &[Generator]) -> RibbonGraph {
    let mut b = Builder {
        g: RibbonGraph {
            rotation: vec![],
            pairing: vec![],
            vertex_of: vec![],
            vertex_kind: vec![],
        },
    };
    // left annulus: counterclockwise = positions n, n-1, ..., 1
    let left = b.vertex(VertexKind::BoundaryCircle, n);
    let right = b.vertex(VertexKind::BoundaryCircle, n);
    // open[p] = half-edge at the loose end of the band now at position p + 1
    let mut open: Vec<usize> = (0..n).map(|p| left[n - 1 - p]).collect();
    for g in letters {
        let p = g.index - 1;
        if g.is_virtual() {
            open.swap(p, p + 1);
            continue;
        }
        let hs = b.vertex(VertexKind::Crossing, 4);
        let (ne, nw, sw, se) = (hs[0], hs[1], hs[2], hs[3]);
        b.edge(open[p], nw);
        b.edge(open[p + 1], sw);
        open[p] = ne;
        open[p + 1] = se;
    }
    // right annulus: counterclockwise = positions 1, 2, ..., n
    for p in 0..n {
        b.edge(open[p], right[p]);
    }
    b.g
}

pub fn ribbon_of_braid(w: &BraidWord) -> RibbonGraph {
    ribbon_of_letters(w.strand_count(), w.letters())
}

fn count_cycles(perm: impl Fn(usize) -> usize, len: usize) -> usize {
    let mut seen = vec![false; len];
    let mut cycles = 0;
    for start in 0..len {
        if seen[start] {
            continue;
        }
        cycles += 1;
        let mut h = start;
        while !seen[h] {
            seen[h] = true;
            h = perm(h);
        }
    }
    cycles
}

impl RibbonGraph {
    pub fn half_edge_count(&self) -> usize {
        self.rotation.len()
    }

    pub fn edge_count(&self) -> usize {
        self.half_edge_count() / 2
    }

    pub fn crossing_count(&self) -> usize {
        self.vertex_kind.iter().filter(|&&k| k == VertexKind::Crossing).count()
    }

    /// Checks the structural invariants.
    pub fn validate(&self) -> Result<()> {
        let len = self.half_edge_count();
        let involution = (0..len).all(|h| {
            let p = self.pairing[h];
            p < len && p != h && self.pairing[p] == h
        });
        if !involution {
            return Err(Error::Malformed("edge pairing is not a fixed-point-free involution".into()));
        }
        let mut hit = vec![false; len];
        for h in 0..len {
            let r = self.rotation[h];
            if r >= len || hit[r] || self.vertex_of[r] != self.vertex_of[h] {
                return Err(Error::Malformed("rotation is not a permutation within vertices".into()));
            }
            hit[r] = true;
        }
        let circles = self
            .vertex_kind
            .iter()
            .filter(|&&k| k == VertexKind::BoundaryCircle)
            .count();
        if circles != 2 {
            return Err(Error::Malformed(format!("expected 2 boundary circles, found {circles}")));
        }
        Ok(())
    }

    /// `Σ weight(v) − #edges`.
    pub fn euler_by_weights(&self) -> i64 {
        self.vertex_kind.iter().map(|k| k.weight()).sum::<i64>() - self.edge_count() as i64
    }

    /// The same count taken from the permutations alone: disk vertices are
    /// rotation orbits at crossing vertices, edges are pairing orbits.
    pub fn euler_by_traversal(&self) -> i64 {
        let len = self.half_edge_count();
        let mut seen = vec![false; len];
        let mut disks = 0i64;
        for start in 0..len {
            if seen[start] {
                continue;
            }
            let mut h = start;
            while !seen[h] {
                seen[h] = true;
                h = self.rotation[h];
            }
            if self.vertex_kind[self.vertex_of[start]] == VertexKind::Crossing {
                disks += 1;
            }
        }
        let edges = count_cycles(|h| self.pairing[h], len) as i64;
        disks - edges
    }
}

/// Boundary circuits of the thickened graph: the face cycles of the rotation
/// system, plus the inner circle of each annulus.
pub fn boundary_components(r: &RibbonGraph) -> usize {
    count_cycles(|h| r.rotation[r.pairing[h]], r.half_edge_count()) + 2
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SurfaceSummary {
    pub euler: i64,
    pub boundaries: usize,
    pub genus: usize,
}

impl SurfaceSummary {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("summary serializes")
    }
}

impl fmt::Display for SurfaceSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "euler {} boundaries {} genus {}", self.euler, self.boundaries, self.genus)
    }
}

/// Euler characteristic, boundary count, and the genus after capping every
/// boundary circle except the two annulus inner circles.
pub fn summarize(r: &RibbonGraph) -> Result<SurfaceSummary> {
    let euler = r.euler_by_weights();
    let boundaries = boundary_components(r);
    let capped = euler + boundaries as i64 - 2;
    if capped % 2 != 0 || capped > 0 {
        return Err(Error::OddEuler(capped));
    }
    Ok(SurfaceSummary {
        euler,
        boundaries,
        genus: (-capped / 2) as usize,
    })
}

pub fn surface_summary(w: &BraidWord) -> Result<SurfaceSummary> {
    summarize(&ribbon_of_braid(w))
}

pub fn genus(w: &BraidWord) -> Result<usize> {
    surface_summary(w).map(|s| s.genus)
}
