//! Validated triangulations of closed oriented 3-manifolds.
//!
//! A triangulation is a strict simplicial complex given by its tetrahedra;
//! construction enforces, in order: four distinct in-range vertices per
//! tetrahedron, no duplicate tetrahedra, every triangle shared by exactly two
//! tetrahedra, every vertex used, a connected face-adjacency graph, every
//! vertex link a 2-sphere, and global orientability. Orientation signs
//! `ε_i ∈ {+1, −1}` are computed by propagating across shared triangles from
//! tetrahedron 0 (sign `+1`); a contradiction during propagation means the
//! complex is non-orientable and the input is rejected.

use serde::Deserialize;
use std::collections::{HashMap, VecDeque};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TriangulationError {
    #[error("syntax error at line {line}, column {col}: {message}")]
    SyntaxError {
        line: usize,
        col: usize,
        message: String,
    },
    #[error("tetrahedron {index} repeats a vertex: {tet:?}")]
    RepeatedVertexInTet { index: usize, tet: [usize; 4] },
    #[error("tetrahedron {index} uses vertex {vertex}, but only {vertex_count} vertices are declared")]
    OutOfRangeVertex {
        index: usize,
        vertex: usize,
        vertex_count: usize,
    },
    #[error("duplicate tetrahedron {tet:?}")]
    DuplicateTet { tet: [usize; 4] },
    #[error("triangle {triangle:?} lies in {count} tetrahedra (expected exactly 2)")]
    OpenBoundary { triangle: [usize; 3], count: usize },
    #[error("vertex {vertex} does not have a 2-sphere link")]
    NonManifoldVertex { vertex: usize },
    #[error("face-adjacency graph is disconnected")]
    Disconnected,
    #[error("triangulation is not orientable")]
    NonOrientable,
    #[error("bad relabeling: {detail}")]
    BadRelabel { detail: String },
}

/// A closed oriented triangulated 3-manifold with all derived incidence
/// tables precomputed. Immutable after construction.
#[derive(Debug, Clone)]
pub struct Triangulation {
    vertex_count: usize,
    /// Sorted 4-tuples, listed in lexicographic order.
    tets: Vec<[usize; 4]>,
    /// Sorted 2-tuples, lexicographic.
    edges: Vec<[usize; 2]>,
    /// Sorted 3-tuples, lexicographic.
    triangles: Vec<[usize; 3]>,
    edge_ids: HashMap<[usize; 2], usize>,
    tri_ids: HashMap<[usize; 3], usize>,
    /// The exactly-two tetrahedra containing each triangle.
    tri_tets: Vec<[usize; 2]>,
    /// For triangle (v0<v1<v2): edge ids of (v0,v1), (v1,v2), (v0,v2).
    tri_edges: Vec<[usize; 3]>,
    /// For tet (v0<v1<v2<v3): edge ids of (v0,v1), (v1,v2), (v2,v3).
    tet_consecutive_edges: Vec<[usize; 3]>,
    edge_triangles: Vec<Vec<usize>>,
    edge_tets: Vec<Vec<usize>>,
    vertex_tets: Vec<Vec<usize>>,
    neighbors: Vec<Vec<usize>>,
    /// Coherent orientation signs, one per tetrahedron.
    signs: Vec<i8>,
}

impl Triangulation {
    /// Builds and fully validates a triangulation. Orientation signs are
    /// anchored at the lexicographically first tetrahedron with sign `+1`.
    pub fn from_tets(
        vertex_count: usize,
        tets: Vec<[usize; 4]>,
    ) -> Result<Self, TriangulationError> {
        Self::from_tets_anchored(vertex_count, tets, None)
    }

    /// As [`from_tets`](Self::from_tets), but if `anchor = (tet, sign)` is
    /// given, the global orientation is chosen so that the (sorted) anchor
    /// tetrahedron carries `sign`. Used to carry an orientation across
    /// relabelings and moves.
    pub(crate) fn from_tets_anchored(
        vertex_count: usize,
        tets: Vec<[usize; 4]>,
        anchor: Option<([usize; 4], i8)>,
    ) -> Result<Self, TriangulationError> {
        // Per-tet checks, then sort each tet and the tet list.
        let mut sorted: Vec<[usize; 4]> = Vec::with_capacity(tets.len());
        for (index, raw) in tets.iter().enumerate() {
            let mut t = *raw;
            if let Some(&v) = t.iter().find(|&&v| v >= vertex_count) {
                return Err(TriangulationError::OutOfRangeVertex {
                    index,
                    vertex: v,
                    vertex_count,
                });
            }
            t.sort_unstable();
            if t[0] == t[1] || t[1] == t[2] || t[2] == t[3] {
                return Err(TriangulationError::RepeatedVertexInTet { index, tet: *raw });
            }
            sorted.push(t);
        }
        sorted.sort_unstable();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(TriangulationError::DuplicateTet { tet: w[0] });
        }
        let tets = sorted;
        let m = tets.len();

        // Collect the edge and triangle sets, then sort them so ids are
        // stable under any tet input order.
        let mut edge_set: Vec<[usize; 2]> = Vec::new();
        let mut tri_count: HashMap<[usize; 3], usize> = HashMap::new();
        for t in &tets {
            for a in 0..4 {
                for b in (a + 1)..4 {
                    edge_set.push([t[a], t[b]]);
                }
            }
            for omit in 0..4 {
                *tri_count.entry(facet_of(t, omit)).or_insert(0) += 1;
            }
        }
        // Closedness: every triangle in exactly two tetrahedra. Report the
        // lexicographically first offender.
        let mut offenders: Vec<(&[usize; 3], usize)> =
            tri_count.iter().filter(|(_, &c)| c != 2).map(|(k, &c)| (k, c)).collect();
        offenders.sort_unstable();
        if let Some(&(tri, count)) = offenders.first() {
            return Err(TriangulationError::OpenBoundary {
                triangle: *tri,
                count,
            });
        }
        let (edges, edge_ids) = sort_and_reindex(dedup_sorted(edge_set));
        let (triangles, tri_ids) = sort_and_reindex(tri_count.keys().copied().collect());
        let mut tri_tets: Vec<[usize; 2]> = vec![[usize::MAX; 2]; triangles.len()];
        {
            let mut counts: Vec<u8> = vec![0; triangles.len()];
            for (ti, t) in tets.iter().enumerate() {
                for omit in 0..4 {
                    let id = tri_ids[&facet_of(t, omit)];
                    tri_tets[id][counts[id] as usize] = ti;
                    counts[id] += 1;
                }
            }
            debug_assert!(counts.iter().all(|&c| c == 2));
        }

        // Every declared vertex must be used.
        let mut vertex_tets: Vec<Vec<usize>> = vec![Vec::new(); vertex_count];
        for (ti, t) in tets.iter().enumerate() {
            for &v in t {
                vertex_tets[v].push(ti);
            }
        }
        if let Some(v) = (0..vertex_count).find(|&v| vertex_tets[v].is_empty()) {
            return Err(TriangulationError::NonManifoldVertex { vertex: v });
        }

        // Face-adjacency connectivity.
        if m == 0 {
            return Err(TriangulationError::Disconnected);
        }
        {
            let mut seen = vec![false; m];
            let mut queue = VecDeque::from([0usize]);
            seen[0] = true;
            let mut reached = 1;
            while let Some(t) = queue.pop_front() {
                for owners in tri_tets.iter().filter(|o| o.contains(&t)) {
                    let o = if owners[0] == t { owners[1] } else { owners[0] };
                    if !seen[o] {
                        seen[o] = true;
                        reached += 1;
                        queue.push_back(o);
                    }
                }
            }
            if reached != m {
                return Err(TriangulationError::Disconnected);
            }
        }

        // Neighbor lists.
        let mut neighbors: Vec<Vec<usize>> = vec![Vec::new(); vertex_count];
        for e in &edges {
            neighbors[e[0]].push(e[1]);
            neighbors[e[1]].push(e[0]);
        }
        for n in &mut neighbors {
            n.sort_unstable();
            n.dedup();
        }

        // Edge incidences.
        let mut edge_triangles: Vec<Vec<usize>> = vec![Vec::new(); edges.len()];
        let mut tri_edges: Vec<[usize; 3]> = Vec::with_capacity(triangles.len());
        for (id, tri) in triangles.iter().enumerate() {
            let e01 = edge_ids[&[tri[0], tri[1]]];
            let e12 = edge_ids[&[tri[1], tri[2]]];
            let e02 = edge_ids[&[tri[0], tri[2]]];
            tri_edges.push([e01, e12, e02]);
            for e in [e01, e12, e02] {
                edge_triangles[e].push(id);
            }
        }
        let mut edge_tets: Vec<Vec<usize>> = vec![Vec::new(); edges.len()];
        for (ti, t) in tets.iter().enumerate() {
            for a in 0..4 {
                for b in (a + 1)..4 {
                    edge_tets[edge_ids[&[t[a], t[b]]]].push(ti);
                }
            }
        }

        // Vertex links must be 2-spheres: Euler characteristic 2 and connected.
        for v in 0..vertex_count {
            let f_l = vertex_tets[v].len();
            let v_l = neighbors[v].len();
            // Link edges of v = triangles containing v.
            let e_l = edge_triangles
                .iter()
                .zip(&edges)
                .filter(|(_, e)| e.contains(&v))
                .map(|(tris, _)| tris.len())
                .sum::<usize>();
            // Each triangle {v,a,b} contains v on exactly two of its edges
            // ((v,a) and (v,b)), so the sum counts link edges twice.
            debug_assert_eq!(e_l % 2, 0);
            let e_l = e_l / 2;
            if v_l as i64 - e_l as i64 + f_l as i64 != 2 {
                return Err(TriangulationError::NonManifoldVertex { vertex: v });
            }
            // Link connectivity: walk link triangles (= tets at v) across
            // shared link edges (= triangles at v).
            let local: HashMap<usize, usize> = vertex_tets[v]
                .iter()
                .enumerate()
                .map(|(i, &t)| (t, i))
                .collect();
            let mut adj: Vec<Vec<usize>> = vec![Vec::new(); f_l];
            for (tri, owners) in triangles.iter().zip(&tri_tets) {
                if tri.contains(&v) {
                    let (a, b) = (local[&owners[0]], local[&owners[1]]);
                    adj[a].push(b);
                    adj[b].push(a);
                }
            }
            let mut seen = vec![false; f_l];
            let mut queue = VecDeque::from([0usize]);
            seen[0] = true;
            let mut reached = 1;
            while let Some(i) = queue.pop_front() {
                for &j in &adj[i] {
                    if !seen[j] {
                        seen[j] = true;
                        reached += 1;
                        queue.push_back(j);
                    }
                }
            }
            if reached != f_l {
                return Err(TriangulationError::NonManifoldVertex { vertex: v });
            }
        }

        // Orientation signs by propagation across shared triangles.
        let signs = propagate_orientation(&tets, &triangles, &tri_tets)?;
        let mut signs = signs;
        if let Some((anchor_tet, anchor_sign)) = anchor {
            let idx = tets
                .binary_search(&anchor_tet)
                .expect("anchor tetrahedron must survive into the new triangulation");
            if signs[idx] != anchor_sign {
                for s in &mut signs {
                    *s = -*s;
                }
            }
        }

        let tet_consecutive_edges = tets
            .iter()
            .map(|tet| {
                [
                    edge_ids[&[tet[0], tet[1]]],
                    edge_ids[&[tet[1], tet[2]]],
                    edge_ids[&[tet[2], tet[3]]],
                ]
            })
            .collect();
        let t = Self {
            vertex_count,
            tets,
            edges,
            triangles,
            edge_ids,
            tri_ids,
            tri_tets,
            tri_edges,
            tet_consecutive_edges,
            edge_triangles,
            edge_tets,
            vertex_tets,
            neighbors,
            signs,
        };
        // A closed 3-manifold always has Euler characteristic zero.
        debug_assert_eq!(t.euler_characteristic(), 0);
        Ok(t)
    }

    /// Parses the plain-text format:
    ///
    /// ```text
    /// # comment
    /// dim 3
    /// vertices 5
    /// tet 0 1 2 3
    /// ```
    ///
    /// A JSON document `{"vertices": a, "tets": [[v0,v1,v2,v3], …]}` is also
    /// accepted (detected by a leading `{`).
    pub fn parse(text: &str) -> Result<Self, TriangulationError> {
        if text.trim_start().starts_with('{') {
            return Self::parse_json(text);
        }
        let mut vertex_count: Option<usize> = None;
        let mut dim_seen = false;
        let mut tets: Vec<[usize; 4]> = Vec::new();
        let mut tet_lines: Vec<usize> = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = lineno + 1;
            let content = match raw.find('#') {
                Some(i) => &raw[..i],
                None => raw,
            };
            let mut tokens = content.split_whitespace();
            let Some(head) = tokens.next() else { continue };
            let col = |tok: &str| raw.find(tok).map_or(1, |i| i + 1);
            match head {
                "dim" => {
                    let tok = tokens.next().ok_or_else(|| syntax(line, 1, "missing dimension"))?;
                    if tok != "3" {
                        return Err(syntax(line, col(tok), "only dimension 3 is supported"));
                    }
                    dim_seen = true;
                }
                "vertices" => {
                    let tok = tokens
                        .next()
                        .ok_or_else(|| syntax(line, 1, "missing vertex count"))?;
                    let n: usize = tok
                        .parse()
                        .map_err(|_| syntax(line, col(tok), "vertex count must be a nonnegative integer"))?;
                    vertex_count = Some(n);
                }
                "tet" => {
                    let mut t = [0usize; 4];
                    for slot in &mut t {
                        let tok = tokens
                            .next()
                            .ok_or_else(|| syntax(line, 1, "tet needs four vertex indices"))?;
                        *slot = tok
                            .parse()
                            .map_err(|_| syntax(line, col(tok), "vertex index must be a nonnegative integer"))?;
                    }
                    if let Some(extra) = tokens.next() {
                        return Err(syntax(line, col(extra), "tet takes exactly four vertex indices"));
                    }
                    tets.push(t);
                    tet_lines.push(line);
                }
                other => {
                    return Err(syntax(
                        line,
                        col(other),
                        &format!("unknown directive {other:?} (expected dim/vertices/tet)"),
                    ));
                }
            }
            // Reject trailing tokens after dim/vertices.
            if head != "tet" {
                if let Some(extra) = tokens.next() {
                    return Err(syntax(line, col(extra), "unexpected trailing token"));
                }
            }
        }
        if !dim_seen {
            return Err(syntax(1, 1, "missing `dim 3` header"));
        }
        let vertex_count =
            vertex_count.ok_or_else(|| syntax(1, 1, "missing `vertices <count>` header"))?;
        Self::from_tets(vertex_count, tets)
    }

    fn parse_json(text: &str) -> Result<Self, TriangulationError> {
        #[derive(Deserialize)]
        struct Doc {
            #[serde(default)]
            dim: Option<usize>,
            vertices: usize,
            tets: Vec<[usize; 4]>,
        }
        let doc: Doc = serde_json::from_str(text).map_err(|e| TriangulationError::SyntaxError {
            line: e.line(),
            col: e.column(),
            message: e.to_string(),
        })?;
        if let Some(d) = doc.dim {
            if d != 3 {
                return Err(syntax(1, 1, "only dimension 3 is supported"));
            }
        }
        Self::from_tets(doc.vertices, doc.tets)
    }

    /// Serializes to the plain-text format; `parse` round-trips it.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str("dim 3\n");
        out.push_str(&format!("vertices {}\n", self.vertex_count));
        for t in &self.tets {
            out.push_str(&format!("tet {} {} {} {}\n", t[0], t[1], t[2], t[3]));
        }
        out
    }

    /// Applies a vertex relabeling (a permutation of `0..vertex_count`),
    /// carrying the orientation through: each tetrahedron keeps its geometric
    /// orientation, corrected by the parity of the sort that restores
    /// ascending vertex order.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self, TriangulationError> {
        if perm.len() != self.vertex_count {
            return Err(TriangulationError::BadRelabel {
                detail: format!(
                    "permutation has length {}, vertex count is {}",
                    perm.len(),
                    self.vertex_count
                ),
            });
        }
        let mut seen = vec![false; self.vertex_count];
        for &p in perm {
            if p >= self.vertex_count || seen[p] {
                return Err(TriangulationError::BadRelabel {
                    detail: "labels must form a permutation of 0..vertex_count".into(),
                });
            }
            seen[p] = true;
        }
        let mapped: Vec<([usize; 4], i8)> = self
            .tets
            .iter()
            .zip(&self.signs)
            .map(|(t, &s)| {
                let raw = [perm[t[0]], perm[t[1]], perm[t[2]], perm[t[3]]];
                let mut sorted = raw;
                sorted.sort_unstable();
                (sorted, s * sort_parity(&raw))
            })
            .collect();
        let anchor = mapped
            .iter()
            .min_by_key(|(t, _)| *t)
            .map(|(t, s)| (*t, *s))
            .expect("nonempty");
        let rebuilt = Self::from_tets_anchored(
            self.vertex_count,
            mapped.iter().map(|(t, _)| *t).collect(),
            Some(anchor),
        )?;
        // Coherent signs agreeing at one tetrahedron agree everywhere.
        debug_assert!(mapped
            .iter()
            .all(|(t, s)| rebuilt.signs[rebuilt.tets.binary_search(t).unwrap()] == *s));
        Ok(rebuilt)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn tets(&self) -> &[[usize; 4]] {
        &self.tets
    }

    /// Edges as sorted pairs, in lexicographic order.
    pub fn edges(&self) -> &[[usize; 2]] {
        &self.edges
    }

    /// Triangles as sorted triples, in lexicographic order.
    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.triangles
    }

    /// Coherent orientation signs, one per tetrahedron (anchored so that the
    /// first tetrahedron of a freshly parsed complex carries `+1`).
    pub fn orientation_signs(&self) -> &[i8] {
        &self.signs
    }

    /// The tetrahedra containing a triangle (empty if the triangle is absent).
    pub fn tets_containing(&self, triangle: [usize; 3]) -> &[usize] {
        match self.tri_ids.get(&triangle) {
            Some(&id) => &self.tri_tets[id],
            None => &[],
        }
    }

    pub fn edge_id(&self, edge: [usize; 2]) -> Option<usize> {
        self.edge_ids.get(&edge).copied()
    }

    pub fn triangle_id(&self, triangle: [usize; 3]) -> Option<usize> {
        self.tri_ids.get(&triangle).copied()
    }

    /// Edge ids `[e(v0,v1), e(v1,v2), e(v0,v2)]` of triangle `id`.
    pub fn triangle_edge_ids(&self, id: usize) -> [usize; 3] {
        self.tri_edges[id]
    }

    /// Edge ids of the consecutive edges `(v0,v1), (v1,v2), (v2,v3)` of
    /// tetrahedron `index` — the arguments of the cocycle in the state sum.
    pub fn consecutive_edge_ids(&self, index: usize) -> [usize; 3] {
        self.tet_consecutive_edges[index]
    }

    pub fn triangles_of_edge(&self, edge_id: usize) -> &[usize] {
        &self.edge_triangles[edge_id]
    }

    pub fn tets_of_edge(&self, edge_id: usize) -> &[usize] {
        &self.edge_tets[edge_id]
    }

    pub fn tets_of_vertex(&self, v: usize) -> &[usize] {
        &self.vertex_tets[v]
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[v]
    }

    /// `(vertices, edges, triangles, tets)`.
    pub fn f_vector(&self) -> (usize, usize, usize, usize) {
        (
            self.vertex_count,
            self.edges.len(),
            self.triangles.len(),
            self.tets.len(),
        )
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertex_count as i64 - self.edges.len() as i64 + self.triangles.len() as i64
            - self.tets.len() as i64
    }
}

fn syntax(line: usize, col: usize, message: &str) -> TriangulationError {
    TriangulationError::SyntaxError {
        line,
        col,
        message: message.to_string(),
    }
}

/// Parity of the permutation that sorts `vals` ascending: `+1` even, `−1` odd.
fn sort_parity(vals: &[usize; 4]) -> i8 {
    let mut inversions = 0;
    for i in 0..4 {
        for j in (i + 1)..4 {
            if vals[i] > vals[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Propagates orientation signs across shared triangles from tetrahedron 0.
///
/// A tetrahedron with ascending vertices `(w0,w1,w2,w3)` and sign `ε` induces
/// on the facet omitting position `j` the orientation `ε·(−1)^j`; coherence
/// demands the two tetrahedra sharing a triangle induce opposite orientations.
fn propagate_orientation(
    tets: &[[usize; 4]],
    triangles: &[[usize; 3]],
    tri_tets: &[[usize; 2]],
) -> Result<Vec<i8>, TriangulationError> {
    let m = tets.len();
    let mut signs = vec![0i8; m];
    signs[0] = 1;
    let mut queue = VecDeque::from([0usize]);
    while let Some(t) = queue.pop_front() {
        for (tri, owners) in triangles.iter().zip(tri_tets) {
            if !owners.contains(&t) {
                continue;
            }
            let o = if owners[0] == t { owners[1] } else { owners[0] };
            let induced_t = signs[t] * facet_sign(&tets[t], tri);
            let required_o = -induced_t * facet_sign(&tets[o], tri);
            if signs[o] == 0 {
                signs[o] = required_o;
                queue.push_back(o);
            } else if signs[o] != required_o {
                return Err(TriangulationError::NonOrientable);
            }
        }
    }
    debug_assert!(signs.iter().all(|&s| s != 0), "connectivity checked earlier");
    Ok(signs)
}

/// `(−1)^j` where `j` is the position of the vertex of `tet` missing from
/// `tri` (both sorted ascending).
fn facet_sign(tet: &[usize; 4], tri: &[usize; 3]) -> i8 {
    let j = tet
        .iter()
        .position(|v| !tri.contains(v))
        .expect("tri must be a facet of tet");
    if j % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Sorts simplex keys lexicographically and returns the sorted list plus a
/// key → index map.
fn sort_and_reindex<K: Ord + Copy + std::hash::Hash>(mut keys: Vec<K>) -> (Vec<K>, HashMap<K, usize>) {
    keys.sort_unstable();
    let map = keys.iter().enumerate().map(|(i, &k)| (k, i)).collect();
    (keys, map)
}

/// The facet of a sorted tetrahedron omitting position `omit` (stays sorted).
fn facet_of(tet: &[usize; 4], omit: usize) -> [usize; 3] {
    let mut tri = [0usize; 3];
    let mut w = 0;
    for (i, &v) in tet.iter().enumerate() {
        if i != omit {
            tri[w] = v;
            w += 1;
        }
    }
    tri
}

fn dedup_sorted<K: Ord>(mut keys: Vec<K>) -> Vec<K> {
    keys.sort_unstable();
    keys.dedup();
    keys
}

/// The boundary of the standard 4-simplex: the smallest triangulation of the
/// 3-sphere, with all five 4-subsets of `{0,…,4}` as tetrahedra.
pub fn boundary_of_4_simplex() -> Triangulation {
    let tets = vec![
        [0, 1, 2, 3],
        [0, 1, 2, 4],
        [0, 1, 3, 4],
        [0, 2, 3, 4],
        [1, 2, 3, 4],
    ];
    Triangulation::from_tets(5, tets).expect("the 4-simplex boundary is valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn boundary_of_4_simplex_has_expected_tables() {
        let t = boundary_of_4_simplex();
        assert_eq!(t.f_vector(), (5, 10, 10, 5));
        assert_eq!(t.euler_characteristic(), 0);
        assert_eq!(t.edges()[0], [0, 1]);
        assert_eq!(t.edges().len(), 10);
        assert_eq!(t.tets_containing([0, 1, 2]), &[0, 1]);
        assert_eq!(t.tets_containing([7, 8, 9]), &[] as &[usize]);
        assert_eq!(t.orientation_signs(), &[1, -1, 1, -1, 1]);
    }

    #[test]
    fn single_tet_has_open_boundary() {
        let err = Triangulation::from_tets(4, vec![[0, 1, 2, 3]]).unwrap_err();
        assert_eq!(
            err,
            TriangulationError::OpenBoundary {
                triangle: [0, 1, 2],
                count: 1
            }
        );
    }

    #[test]
    fn repeated_vertex_and_duplicates_are_rejected() {
        assert_eq!(
            Triangulation::from_tets(5, vec![[0, 1, 1, 2]]).unwrap_err(),
            TriangulationError::RepeatedVertexInTet {
                index: 0,
                tet: [0, 1, 1, 2]
            }
        );
        assert_eq!(
            Triangulation::from_tets(5, vec![[0, 1, 2, 3], [3, 2, 1, 0]]).unwrap_err(),
            TriangulationError::DuplicateTet { tet: [0, 1, 2, 3] }
        );
        assert_eq!(
            Triangulation::from_tets(3, vec![[0, 1, 2, 3]]).unwrap_err(),
            TriangulationError::OutOfRangeVertex {
                index: 0,
                vertex: 3,
                vertex_count: 3
            }
        );
    }

    #[test]
    fn two_disjoint_spheres_are_disconnected() {
        let mut tets: Vec<[usize; 4]> = Vec::new();
        for omit in 0..5 {
            let t: Vec<usize> = (0..5).filter(|&v| v != omit).collect();
            tets.push([t[0], t[1], t[2], t[3]]);
            tets.push([t[0] + 5, t[1] + 5, t[2] + 5, t[3] + 5]);
        }
        assert_eq!(
            Triangulation::from_tets(10, tets).unwrap_err(),
            TriangulationError::Disconnected
        );
    }

    #[test]
    fn unused_vertex_is_non_manifold() {
        let tets = boundary_of_4_simplex().tets().to_vec();
        assert_eq!(
            Triangulation::from_tets(6, tets).unwrap_err(),
            TriangulationError::NonManifoldVertex { vertex: 5 }
        );
    }

    #[test]
    fn text_round_trip() {
        let t = boundary_of_4_simplex();
        let text = t.to_text();
        let back = Triangulation::parse(&text).unwrap();
        assert_eq!(back.tets(), t.tets());
        assert_eq!(back.vertex_count(), t.vertex_count());
        assert_eq!(back.to_text(), text);
    }

    #[test]
    fn parse_accepts_comments_and_json() {
        let text = "# a sphere\n dim 3\n vertices 5 # five of them\n tet 0 1 2 3\ntet 0 1 2 4\ntet 0 1 3 4\ntet 0 2 3 4\ntet 1 2 3 4\n";
        let t = Triangulation::parse(text).unwrap();
        assert_eq!(t.f_vector(), (5, 10, 10, 5));
        let json = r#"{"dim": 3, "vertices": 5,
            "tets": [[0,1,2,3],[0,1,2,4],[0,1,3,4],[0,2,3,4],[1,2,3,4]]}"#;
        let tj = Triangulation::parse(json).unwrap();
        assert_eq!(tj.tets(), t.tets());
    }

    #[test]
    fn parse_reports_line_and_column() {
        let text = "dim 3\nvertices 5\ntet 0 1 x 3\n";
        match Triangulation::parse(text) {
            Err(TriangulationError::SyntaxError { line, col, .. }) => {
                assert_eq!(line, 3);
                assert_eq!(col, 9);
            }
            other => panic!("expected syntax error, got {other:?}"),
        }
        assert!(matches!(
            Triangulation::parse("vertices 5\n"),
            Err(TriangulationError::SyntaxError { .. })
        ));
    }

    #[test]
    fn relabel_preserves_structure_and_orientation() {
        let t = boundary_of_4_simplex();
        let perm = [4, 2, 0, 3, 1];
        let r = t.relabel(&perm).unwrap();
        assert_eq!(r.f_vector(), t.f_vector());
        // Relabeling by a bijection keeps the same abstract complex here:
        // the 4-simplex boundary contains every 4-subset of the vertices.
        assert_eq!(r.tets(), t.tets());
        assert!(t.relabel(&[0, 0, 1, 2, 3]).is_err());
        assert!(t.relabel(&[0, 1, 2]).is_err());
    }
}
