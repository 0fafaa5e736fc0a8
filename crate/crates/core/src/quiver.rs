//! Finite quivers: the constructions Q_S, Q_{S,G}, covering quivers and the
//! canonical Ã-type quivers Q_(i,j), together with connected components,
//! isomorphism by canonical labeling, BGP reflections and reflection search.

use std::collections::{BTreeMap, HashSet, VecDeque};
use std::fmt;

use num_integer::Integer;
use petgraph::unionfind::UnionFind;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::AlgebraSpec;
use crate::error::{Error, Result};

/// Vertex label: `Index(i)` prints as `v{i}`, `Pair(i, j)` as `v{i}_{j}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Vertex {
    Index(u32),
    Pair(u32, u32),
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Vertex::Index(i) => write!(f, "v{i}"),
            Vertex::Pair(i, j) => write!(f, "v{i}_{j}"),
        }
    }
}

impl std::str::FromStr for Vertex {
    type Err = Error;

    /// Accepts `v3`, `3`, `v1_2`, `1_2` and `(1,2)`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::UnknownVertex(s.to_string());
        let t = s.trim();
        let t = t.strip_prefix('v').unwrap_or(t);
        let t = t.trim_start_matches('(').trim_end_matches(')');
        let parts: Vec<&str> = t.split(['_', ',']).map(str::trim).collect();
        let num = |p: &str| p.parse::<u32>().map_err(|_| bad());
        match parts.as_slice() {
            [i] => Ok(Vertex::Index(num(i)?)),
            [i, j] => Ok(Vertex::Pair(num(i)?, num(j)?)),
            _ => Err(bad()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Tag {
    X,
    Y,
    Untagged,
}

impl Tag {
    pub fn label(self) -> Option<&'static str> {
        match self {
            Tag::X => Some("x"),
            Tag::Y => Some("y"),
            Tag::Untagged => None,
        }
    }
}

/// An arrow between vertex positions of its quiver.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Arrow {
    pub src: usize,
    pub dst: usize,
    pub tag: Tag,
}

/// A finite directed multigraph with tagged arrows.
///
/// Vertices are kept in ascending order and arrows sorted by (src, dst, tag),
/// so equal quivers compare equal and serialize identically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quiver {
    vertices: Vec<Vertex>,
    arrows: Vec<Arrow>,
}

/// Isomorphism-invariant form: vertex count and relabeled arrow list.
pub type Certificate = Vec<(usize, Vec<(usize, usize, Tag)>)>;

#[derive(Serialize)]
struct JsonArrow {
    src: String,
    dst: String,
    tag: Option<&'static str>,
}

#[derive(Serialize)]
struct JsonQuiver {
    vertices: Vec<String>,
    arrows: Vec<JsonArrow>,
}

impl Quiver {
    /// Builds a quiver from labeled arrows; every endpoint must be listed.
    pub fn new<V, A>(vertices: V, arrows: A) -> Result<Self>
    where
        V: IntoIterator<Item = Vertex>,
        A: IntoIterator<Item = (Vertex, Vertex, Tag)>,
    {
        let mut vertices: Vec<Vertex> = vertices.into_iter().collect();
        vertices.sort();
        vertices.dedup();
        let pos = |v: Vertex| {
            vertices
                .binary_search(&v)
                .map_err(|_| Error::UnknownVertex(v.to_string()))
        };
        let mut out = Vec::new();
        for (s, t, tag) in arrows {
            out.push(Arrow {
                src: pos(s)?,
                dst: pos(t)?,
                tag,
            });
        }
        out.sort();
        Ok(Self {
            vertices,
            arrows: out,
        })
    }

    fn from_parts(vertices: Vec<Vertex>, mut arrows: Vec<Arrow>) -> Self {
        arrows.sort();
        Self { vertices, arrows }
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn index_of(&self, v: Vertex) -> Option<usize> {
        self.vertices.binary_search(&v).ok()
    }

    /// Arrows as (source label, target label, tag).
    pub fn labeled_arrows(&self) -> Vec<(Vertex, Vertex, Tag)> {
        self.arrows
            .iter()
            .map(|a| (self.vertices[a.src], self.vertices[a.dst], a.tag))
            .collect()
    }

    pub fn count_tag(&self, tag: Tag) -> usize {
        self.arrows.iter().filter(|a| a.tag == tag).count()
    }

    /// Same quiver with every tag dropped.
    pub fn untagged(&self) -> Self {
        Self::from_parts(
            self.vertices.clone(),
            self.arrows
                .iter()
                .map(|a| Arrow {
                    tag: Tag::Untagged,
                    ..*a
                })
                .collect(),
        )
    }

    pub fn is_sink(&self, i: usize) -> bool {
        self.arrows.iter().all(|a| a.src != i)
    }

    pub fn is_source(&self, i: usize) -> bool {
        self.arrows.iter().all(|a| a.dst != i)
    }

    /// Positions of all sinks and sources.
    pub fn reflectable_vertices(&self) -> Vec<usize> {
        (0..self.vertex_count())
            .filter(|&i| self.is_sink(i) || self.is_source(i))
            .collect()
    }

    /// Reverses every arrow at the vertex in position `i`, which must be a
    /// sink or a source.
    pub fn bgp_reflect(&self, i: usize) -> Result<Self> {
        if i >= self.vertex_count() {
            return Err(Error::VertexOutOfRange(i));
        }
        if !self.is_sink(i) && !self.is_source(i) {
            return Err(Error::NotSinkOrSource(i));
        }
        let arrows = self
            .arrows
            .iter()
            .map(|a| {
                if a.src == i || a.dst == i {
                    Arrow {
                        src: a.dst,
                        dst: a.src,
                        tag: a.tag,
                    }
                } else {
                    *a
                }
            })
            .collect();
        Ok(Self::from_parts(self.vertices.clone(), arrows))
    }

    pub fn bgp_reflect_at(&self, v: Vertex) -> Result<Self> {
        let i = self
            .index_of(v)
            .ok_or_else(|| Error::UnknownVertex(v.to_string()))?;
        self.bgp_reflect(i)
    }

    /// Whether there is no oriented cycle (a height function exists).
    pub fn is_acyclic(&self) -> bool {
        self.topological_order().is_some()
    }

    fn topological_order(&self) -> Option<Vec<usize>> {
        let n = self.vertex_count();
        let mut indeg = vec![0usize; n];
        for a in &self.arrows {
            indeg[a.dst] += 1;
        }
        let mut queue: VecDeque<usize> = (0..n).filter(|&i| indeg[i] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for a in self.arrows.iter().filter(|a| a.src == v) {
                indeg[a.dst] -= 1;
                if indeg[a.dst] == 0 {
                    queue.push_back(a.dst);
                }
            }
        }
        (order.len() == n).then_some(order)
    }

    /// Number of paths, trivial ones included; the dimension of the path
    /// algebra of an acyclic quiver.
    pub fn path_count(&self) -> Result<usize> {
        let order = self.topological_order().ok_or(Error::OrientedCycle)?;
        let mut ending = vec![1usize; self.vertex_count()];
        for v in order {
            let incoming: usize = self
                .arrows
                .iter()
                .filter(|a| a.dst == v)
                .map(|a| ending[a.src])
                .sum();
            ending[v] += incoming;
        }
        Ok(ending.iter().sum())
    }

    /// Multiset of undirected edges, for checking that reflections keep the
    /// underlying graph.
    pub fn underlying_edges(&self) -> Vec<(usize, usize)> {
        let mut e: Vec<(usize, usize)> = self
            .arrows
            .iter()
            .map(|a| (a.src.min(a.dst), a.src.max(a.dst)))
            .collect();
        e.sort();
        e
    }

    /// Weakly connected components, ordered by their smallest vertex.
    pub fn components(&self) -> Vec<Quiver> {
        let n = self.vertex_count();
        let mut uf = UnionFind::<usize>::new(n);
        for a in &self.arrows {
            uf.union(a.src, a.dst);
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for i in 0..n {
            groups.entry(uf.find(i)).or_default().push(i);
        }
        let mut members: Vec<Vec<usize>> = groups.into_values().collect();
        members.sort_by_key(|m| m[0]);
        members
            .into_iter()
            .map(|m| {
                let local: BTreeMap<usize, usize> =
                    m.iter().enumerate().map(|(k, &i)| (i, k)).collect();
                let arrows = self
                    .arrows
                    .iter()
                    .filter(|a| local.contains_key(&a.src))
                    .map(|a| Arrow {
                        src: local[&a.src],
                        dst: local[&a.dst],
                        tag: a.tag,
                    })
                    .collect();
                Quiver::from_parts(m.iter().map(|&i| self.vertices[i]).collect(), arrows)
            })
            .collect()
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Canonical certificate and the vertex order realizing it.
    ///
    /// Components are labeled separately and then sorted by certificate, so
    /// disjoint unions of many copies stay cheap.
    pub fn canonical_labeling(&self, respect_tags: bool) -> (Certificate, Vec<Vertex>) {
        let mut parts: Vec<((usize, Vec<(usize, usize, Tag)>), Vec<Vertex>)> = self
            .components()
            .iter()
            .map(|c| {
                let (cert, order) = connected_canonical(c, respect_tags);
                (
                    (c.vertex_count(), cert),
                    order.into_iter().map(|i| c.vertices[i]).collect(),
                )
            })
            .collect();
        parts.sort();
        let cert = parts.iter().map(|(c, _)| c.clone()).collect();
        let order = parts.into_iter().flat_map(|(_, o)| o).collect();
        (cert, order)
    }

    pub fn certificate(&self, respect_tags: bool) -> Certificate {
        self.canonical_labeling(respect_tags).0
    }

    /// A vertex bijection self → other preserving arrows (and tags when
    /// requested), if one exists.
    pub fn isomorphism(&self, other: &Quiver, respect_tags: bool) -> Option<Vec<(Vertex, Vertex)>> {
        if self.vertex_count() != other.vertex_count() || self.arrow_count() != other.arrow_count() {
            return None;
        }
        let (c1, o1) = self.canonical_labeling(respect_tags);
        let (c2, o2) = other.canonical_labeling(respect_tags);
        if c1 != c2 {
            return None;
        }
        let mut map: Vec<(Vertex, Vertex)> = o1.into_iter().zip(o2).collect();
        map.sort();
        Some(map)
    }

    pub fn is_isomorphic(&self, other: &Quiver, respect_tags: bool) -> bool {
        self.isomorphism(other, respect_tags).is_some()
    }

    /// For an acyclic quiver whose underlying graph is one cycle, the sorted
    /// numbers of arrows pointing each way around the cycle.
    pub fn canonical_type(&self) -> Result<(usize, usize)> {
        let n = self.vertex_count();
        if n == 0 || self.arrow_count() != n || !self.is_connected() {
            return Err(Error::NotACycle);
        }
        let mut incident: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (k, a) in self.arrows.iter().enumerate() {
            incident[a.src].push(k);
            incident[a.dst].push(k);
        }
        if incident.iter().any(|e| e.len() != 2) {
            return Err(Error::NotACycle);
        }
        let (mut forward, mut backward) = (0, 0);
        let mut at = 0;
        let mut via = incident[0][0];
        for _ in 0..n {
            let a = self.arrows[via];
            let next = if a.src == at {
                forward += 1;
                a.dst
            } else {
                backward += 1;
                a.src
            };
            at = next;
            via = if incident[at][0] == via {
                incident[at][1]
            } else {
                incident[at][0]
            };
        }
        if forward == 0 || backward == 0 {
            return Err(Error::OrientedCycle);
        }
        Ok((forward.min(backward), forward.max(backward)))
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph Q {\n");
        for v in &self.vertices {
            s.push_str(&format!("  {v};\n"));
        }
        for a in &self.arrows {
            let (u, v) = (self.vertices[a.src], self.vertices[a.dst]);
            match a.tag.label() {
                Some(l) => s.push_str(&format!("  {u} -> {v} [label=\"{l}\"];\n")),
                None => s.push_str(&format!("  {u} -> {v};\n")),
            }
        }
        s.push_str("}\n");
        s
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let q = JsonQuiver {
            vertices: self.vertices.iter().map(ToString::to_string).collect(),
            arrows: self
                .arrows
                .iter()
                .map(|a| JsonArrow {
                    src: self.vertices[a.src].to_string(),
                    dst: self.vertices[a.dst].to_string(),
                    tag: a.tag.label(),
                })
                .collect(),
        };
        serde_json::to_value(q).expect("quiver serializes")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_value()).expect("quiver serializes")
    }
}

impl fmt::Display for Quiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} vertices, {} arrows:", self.vertex_count(), self.arrow_count())?;
        for (u, v, t) in self.labeled_arrows() {
            match t.label() {
                Some(l) => write!(f, " {u}-{l}->{v}")?,
                None => write!(f, " {u}->{v}")?,
            }
        }
        Ok(())
    }
}

/// Canonical labeling of a connected quiver by color refinement with
/// individualization, keeping the lexicographically least relabeled arrow list.
fn connected_canonical(q: &Quiver, respect_tags: bool) -> (Vec<(usize, usize, Tag)>, Vec<usize>) {
    let n = q.vertex_count();
    let tag = |t: Tag| if respect_tags { t } else { Tag::Untagged };
    let mut out_adj: Vec<Vec<(usize, Tag)>> = vec![Vec::new(); n];
    let mut in_adj: Vec<Vec<(usize, Tag)>> = vec![Vec::new(); n];
    for a in &q.arrows {
        out_adj[a.src].push((a.dst, tag(a.tag)));
        in_adj[a.dst].push((a.src, tag(a.tag)));
    }
    let ctx = Refiner {
        out_adj,
        in_adj,
        arrows: q.arrows.iter().map(|a| (a.src, a.dst, tag(a.tag))).collect(),
    };
    let colors = ctx.refine(vec![0; n]);
    let mut best: Option<(Vec<(usize, usize, Tag)>, Vec<usize>)> = None;
    ctx.search(colors, &mut best);
    best.expect("search visits at least one leaf")
}

struct Refiner {
    out_adj: Vec<Vec<(usize, Tag)>>,
    in_adj: Vec<Vec<(usize, Tag)>>,
    arrows: Vec<(usize, usize, Tag)>,
}

impl Refiner {
    /// Refines a coloring to the coarsest equitable one finer than it. Colors
    /// are ranks of label-independent signatures.
    fn refine(&self, mut colors: Vec<usize>) -> Vec<usize> {
        let n = colors.len();
        let mut classes = usize::MAX;
        loop {
            let sigs: Vec<(usize, Vec<(usize, Tag)>, Vec<(usize, Tag)>)> = (0..n)
                .map(|v| {
                    let mut o: Vec<(usize, Tag)> =
                        self.out_adj[v].iter().map(|&(u, t)| (colors[u], t)).collect();
                    let mut i: Vec<(usize, Tag)> =
                        self.in_adj[v].iter().map(|&(u, t)| (colors[u], t)).collect();
                    o.sort();
                    i.sort();
                    (colors[v], o, i)
                })
                .collect();
            let mut uniq = sigs.clone();
            uniq.sort();
            uniq.dedup();
            colors = sigs
                .iter()
                .map(|s| uniq.binary_search(s).expect("signature present"))
                .collect();
            if uniq.len() == classes {
                return colors;
            }
            classes = uniq.len();
        }
    }

    fn search(&self, colors: Vec<usize>, best: &mut Option<(Vec<(usize, usize, Tag)>, Vec<usize>)>) {
        let n = colors.len();
        let mut sizes = vec![0usize; n];
        for &c in &colors {
            sizes[c] += 1;
        }
        let Some(target) = (0..n).find(|&c| sizes[c] > 1) else {
            let mut order = vec![0; n];
            for (v, &c) in colors.iter().enumerate() {
                order[c] = v;
            }
            let mut cert: Vec<(usize, usize, Tag)> = self
                .arrows
                .iter()
                .map(|&(s, d, t)| (colors[s], colors[d], t))
                .collect();
            cert.sort();
            if best.as_ref().is_none_or(|(b, _)| cert < *b) {
                *best = Some((cert, order));
            }
            return;
        };
        for v in (0..n).filter(|&v| colors[v] == target) {
            // split v off ahead of the rest of its cell
            let split: Vec<usize> = (0..n)
                .map(|u| 2 * colors[u] + usize::from(colors[u] == target && u != v))
                .collect();
            self.search(self.refine(split), best);
        }
    }
}

/// Q_S: vertices 0..ℓ, arrows i → i+deg x tagged x and i → i+deg y tagged y
/// whenever the target stays below ℓ.
pub fn quiver_qs(spec: &AlgebraSpec) -> Quiver {
    let (wx, wy, ell) = (spec.wx(), spec.wy(), spec.ell());
    let mut arrows = Vec::new();
    for i in 0..ell {
        if i + wx < ell {
            arrows.push((Vertex::Index(i), Vertex::Index(i + wx), Tag::X));
        }
        if i + wy < ell {
            arrows.push((Vertex::Index(i), Vertex::Index(i + wy), Tag::Y));
        }
    }
    Quiver::new((0..ell).map(Vertex::Index), arrows).expect("endpoints are vertices")
}

/// Q_{S,G} for the cyclic group of order r: each x-arrow i → i′ of Q_S lifts
/// to (i, j−1) → (i′, j) and each y-arrow to (i, j+1) → (i′, j).
pub fn quiver_qsg(spec: &AlgebraSpec, r: u32) -> Result<Quiver> {
    if r == 0 {
        return Err(Error::ZeroGroupOrder);
    }
    if r == 1 {
        return Ok(quiver_qs(spec));
    }
    lift(spec, r, |tag, i, i2, j| match tag {
        Tag::X => (Vertex::Pair(i, (j + r - 1) % r), Vertex::Pair(i2, j)),
        _ => (Vertex::Pair(i, (j + 1) % r), Vertex::Pair(i2, j)),
    })
}

/// The connected c-fold cover of Q_S: c stacked copies in which the y-arrow
/// leaving vertex 0 of copy k+1 lands in copy k (indices mod c).
pub fn covering_quiver(spec: &AlgebraSpec, c: u32) -> Result<Quiver> {
    if c == 0 {
        return Err(Error::ZeroCoveringDegree);
    }
    if c == 1 {
        return Ok(quiver_qs(spec));
    }
    lift(spec, c, |tag, i, i2, k| match tag {
        Tag::Y if i == 0 => (Vertex::Pair(i, (k + 1) % c), Vertex::Pair(i2, k)),
        _ => (Vertex::Pair(i, k), Vertex::Pair(i2, k)),
    })
}

fn lift<F>(spec: &AlgebraSpec, sheets: u32, place: F) -> Result<Quiver>
where
    F: Fn(Tag, u32, u32, u32) -> (Vertex, Vertex),
{
    let base = quiver_qs(spec);
    let ell = spec.ell();
    let vertices = (0..ell).flat_map(|i| (0..sheets).map(move |j| Vertex::Pair(i, j)));
    let mut arrows = Vec::new();
    for (u, v, tag) in base.labeled_arrows() {
        let (Vertex::Index(i), Vertex::Index(i2)) = (u, v) else {
            unreachable!("Q_S uses integer vertices")
        };
        for j in 0..sheets {
            let (s, t) = place(tag, i, i2, j);
            arrows.push((s, t, tag));
        }
    }
    Quiver::new(vertices, arrows)
}

/// Q_(i,j): a source and a sink joined by directed paths of lengths i and j.
/// The source is v0, the sink v{i+j−1}; the length-i path runs through
/// v1..v{i−1} and the length-j path through v{i}..v{i+j−2}.
pub fn make_canonical_quiver(i: usize, j: usize) -> Result<Quiver> {
    if i == 0 || j == 0 {
        return Err(Error::InvalidPathLengths(i, j));
    }
    let n = (i + j) as u32;
    let sink = n - 1;
    let path = |inner: Vec<u32>| {
        let mut stops = vec![0];
        stops.extend(inner);
        stops.push(sink);
        stops
            .windows(2)
            .map(|w| (Vertex::Index(w[0]), Vertex::Index(w[1]), Tag::Untagged))
            .collect::<Vec<_>>()
    };
    let mut arrows = path((1..i as u32).collect());
    arrows.extend(path((i as u32..sink).collect()));
    Quiver::new((0..n).map(Vertex::Index), arrows)
}

/// Number of components gcd(ℓ, r) and covering degree lcm(ℓ, r)/ℓ predicted
/// for Q_{S,G}.
pub fn predicted_decomposition(spec: &AlgebraSpec, r: u32) -> (u32, u32) {
    let ell = spec.ell();
    (ell.gcd(&r), ell.lcm(&r) / ell)
}

/// Default depth bound 2·|V|² for [`reflection_search`].
pub fn default_search_depth(q: &Quiver) -> usize {
    2 * q.vertex_count() * q.vertex_count()
}

/// Breadth-first search for a sequence of BGP reflections turning `from` into
/// a quiver isomorphic to `to` (tags ignored). States are deduplicated by
/// certificate; each level is expanded in parallel. Returns the vertices
/// reflected, in order.
pub fn reflection_search(from: &Quiver, to: &Quiver, max_depth: usize) -> Option<Vec<Vertex>> {
    if from.vertex_count() != to.vertex_count() || from.arrow_count() != to.arrow_count() {
        return None;
    }
    if let (Ok(a), Ok(b)) = (from.canonical_type(), to.canonical_type()) {
        if a != b {
            return None;
        }
    }
    let goal = to.certificate(false);
    let start = from.untagged();
    let start_cert = start.certificate(false);
    if start_cert == goal {
        return Some(Vec::new());
    }
    let mut visited: HashSet<Certificate> = HashSet::from([start_cert]);
    let mut frontier: Vec<(Quiver, Vec<usize>)> = vec![(start, Vec::new())];
    for _ in 0..max_depth {
        let expanded: Vec<(Quiver, Vec<usize>, Certificate)> = frontier
            .par_iter()
            .flat_map_iter(|(q, path)| {
                q.reflectable_vertices().into_iter().map(move |v| {
                    let next = q.bgp_reflect(v).expect("sink or source");
                    let cert = next.certificate(false);
                    let mut p = path.clone();
                    p.push(v);
                    (next, p, cert)
                })
            })
            .collect();
        let mut next_frontier = Vec::new();
        for (q, path, cert) in expanded {
            if cert == goal {
                return Some(path.into_iter().map(|i| from.vertices[i]).collect());
            }
            if visited.insert(cert) {
                next_frontier.push((q, path));
            }
        }
        if next_frontier.is_empty() {
            return None;
        }
        frontier = next_frontier;
    }
    None
}

/// Applies reflections at the given vertices in order.
pub fn replay_reflections(q: &Quiver, sequence: &[Vertex]) -> Result<Quiver> {
    sequence
        .iter()
        .try_fold(q.clone(), |acc, v| acc.bgp_reflect_at(*v))
}
