//! The finite simplicial graph and vertex group data that parameterize a
//! graph product, plus links, induced subgraphs and the JSON input schema.

use crate::poly::Poly;
use crate::rational::RationalSeries;
use crate::series::{SeriesError, TruncatedSeries};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const DEFAULT_VERTEX_CAP: usize = 20;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("edge endpoint `{0}` is not a declared vertex")]
    UnknownVertex(String),
    #[error("loop edge at vertex `{0}`")]
    LoopEdge(String),
    #[error("duplicate vertex name `{0}`")]
    DuplicateVertex(String),
    #[error("cyclic vertex group must have order >= 2, got {0}")]
    BadCyclicOrder(u64),
    #[error("unknown vertex group kind `{0}`")]
    UnknownKind(String),
    #[error("custom vertex group needs both `sigma` and `sigma_conj`")]
    MissingCustomSeries,
    #[error("graph has {0} vertices, above the cap of {1}")]
    TooManyVertices(usize, usize),
    #[error("invalid series data: {0}")]
    Series(#[from] SeriesError),
    #[error("JSON parse error: {0}")]
    Json(#[from] serde_json::Error),
}

/// A custom vertex series: either an explicit coefficient prefix or a
/// rational function given by numerator/denominator coefficient arrays.
#[derive(Clone, Debug, PartialEq)]
pub enum CustomSeries {
    Coeffs(Vec<BigInt>),
    Rational(RationalSeries),
}

impl CustomSeries {
    pub fn to_truncated(&self, cap: usize) -> Result<TruncatedSeries, SeriesError> {
        match self {
            CustomSeries::Coeffs(c) => Ok(TruncatedSeries::new(c.clone(), cap)),
            CustomSeries::Rational(r) => r.expand(cap),
        }
    }

    pub fn as_rational(&self) -> Option<&RationalSeries> {
        match self {
            CustomSeries::Rational(r) => Some(r),
            CustomSeries::Coeffs(_) => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum GroupKind {
    /// Cyclic group of finite order m >= 2; one involution letter for
    /// m = 2, a generator and its inverse otherwise.
    Cyclic(u64),
    /// Infinite cyclic group with a generator and its inverse.
    InfiniteCyclic,
    /// Formula-only vertex group given by its two series.
    Custom { sigma: CustomSeries, sigma_conj: CustomSeries },
}

impl GroupKind {
    /// Standard growth series of the vertex group, when it has a rational
    /// closed form.
    pub fn sigma_rational(&self) -> Option<RationalSeries> {
        match self {
            GroupKind::Cyclic(m) => Some(RationalSeries::from_poly(cyclic_sigma_poly(*m))),
            GroupKind::InfiniteCyclic => {
                Some(RationalSeries::from_i64(&[1, 1], &[1, -1]).unwrap())
            }
            GroupKind::Custom { sigma, .. } => sigma.as_rational().cloned(),
        }
    }

    /// Conjugacy growth series; equals sigma for the abelian built-ins.
    pub fn sigma_conj_rational(&self) -> Option<RationalSeries> {
        match self {
            GroupKind::Custom { sigma_conj, .. } => sigma_conj.as_rational().cloned(),
            _ => self.sigma_rational(),
        }
    }

    pub fn sigma_truncated(&self, cap: usize) -> Result<TruncatedSeries, SeriesError> {
        match self {
            GroupKind::Custom { sigma, .. } => sigma.to_truncated(cap),
            _ => self.sigma_rational().unwrap().expand(cap),
        }
    }

    pub fn sigma_conj_truncated(&self, cap: usize) -> Result<TruncatedSeries, SeriesError> {
        match self {
            GroupKind::Custom { sigma_conj, .. } => sigma_conj.to_truncated(cap),
            _ => self.sigma_conj_rational().unwrap().expand(cap),
        }
    }

    /// Whether the oracle can enumerate elements of this vertex group.
    pub fn is_enumerable(&self) -> bool {
        !matches!(self, GroupKind::Custom { .. })
    }
}

/// sigma of Z/m over one generator pair: 1+z for m=2, then
/// 1+2z+...+2z^{(m-1)/2} for odd m and 1+2z+...+2z^{m/2-1}+z^{m/2} for even m.
fn cyclic_sigma_poly(m: u64) -> Poly {
    let half = (m / 2) as usize;
    let mut coeffs = vec![2i64; half + 1];
    coeffs[0] = 1;
    if m % 2 == 0 {
        coeffs[half] = 1;
    }
    Poly::from_i64(&coeffs)
}

#[derive(Clone, Debug, PartialEq)]
pub struct Vertex {
    pub name: String,
    pub group: GroupKind,
}

/// Subset of vertices as a bitmask over the declaration order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSubset(pub u64);

impl VertexSubset {
    pub const EMPTY: VertexSubset = VertexSubset(0);

    pub fn singleton(v: usize) -> Self {
        VertexSubset(1 << v)
    }

    pub fn full(n: usize) -> Self {
        VertexSubset(if n == 64 { u64::MAX } else { (1u64 << n) - 1 })
    }

    pub fn contains(self, v: usize) -> bool {
        self.0 & (1 << v) != 0
    }

    pub fn insert(self, v: usize) -> Self {
        VertexSubset(self.0 | (1 << v))
    }

    pub fn remove(self, v: usize) -> Self {
        VertexSubset(self.0 & !(1 << v))
    }

    pub fn union(self, o: VertexSubset) -> Self {
        VertexSubset(self.0 | o.0)
    }

    pub fn intersect(self, o: VertexSubset) -> Self {
        VertexSubset(self.0 & o.0)
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset_of(self, o: VertexSubset) -> bool {
        self.0 & !o.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(v)
            }
        })
    }

    /// All subsets of this set, the empty set and the set itself included.
    pub fn subsets(self) -> impl Iterator<Item = VertexSubset> {
        let mask = self.0;
        let mut sub = 0u64;
        let mut done = false;
        std::iter::from_fn(move || {
            if done {
                return None;
            }
            let cur = VertexSubset(sub);
            if sub == mask {
                done = true;
            } else {
                sub = (sub.wrapping_sub(mask)) & mask;
            }
            Some(cur)
        })
    }
}

#[derive(Clone, Debug)]
pub struct GraphSpec {
    vertices: Vec<Vertex>,
    /// Adjacency bitmask per vertex; no loops by construction.
    adj: Vec<u64>,
}

impl GraphSpec {
    pub fn new(vertices: Vec<Vertex>, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let n = vertices.len();
        if n > DEFAULT_VERTEX_CAP {
            return Err(GraphError::TooManyVertices(n, DEFAULT_VERTEX_CAP));
        }
        let mut adj = vec![0u64; n];
        for &(a, b) in edges {
            if a == b {
                return Err(GraphError::LoopEdge(vertices[a].name.clone()));
            }
            adj[a] |= 1 << b;
            adj[b] |= 1 << a;
        }
        Ok(GraphSpec { vertices, adj })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex(&self, v: usize) -> &Vertex {
        &self.vertices[v]
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn full_set(&self) -> VertexSubset {
        VertexSubset::full(self.vertices.len())
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.adj[a] & (1 << b) != 0
    }

    /// Neighbours of v, as a subset.
    pub fn neighbours(&self, v: usize) -> VertexSubset {
        VertexSubset(self.adj[v])
    }

    /// Link of a subset: the vertices adjacent to every member; the link
    /// of the empty set is all of V.
    pub fn link(&self, s: VertexSubset) -> VertexSubset {
        let mut out = self.full_set();
        for v in s.iter() {
            out = out.intersect(self.neighbours(v));
        }
        out
    }

    /// Link computed inside the induced subgraph on `ambient`.
    pub fn link_within(&self, s: VertexSubset, ambient: VertexSubset) -> VertexSubset {
        self.link(s).intersect(ambient)
    }

    pub fn is_cone_vertex(&self, v: usize) -> bool {
        self.neighbours(v).insert(v) == self.full_set()
    }

    /// Cone check inside the induced subgraph on `s`.
    pub fn is_cone_vertex_within(&self, v: usize, s: VertexSubset) -> bool {
        debug_assert!(s.contains(v));
        self.neighbours(v).intersect(s).insert(v) == s
    }

    pub fn is_complete(&self, s: VertexSubset) -> bool {
        s.iter().all(|v| s.remove(v).is_subset_of(self.neighbours(v)))
    }

    pub fn degree_within(&self, v: usize, s: VertexSubset) -> usize {
        self.neighbours(v).intersect(s).len()
    }

    /// Induced subgraph on `s`, keeping vertex order and group specs.
    /// Returns the subgraph plus the map from new indices to old ones.
    pub fn induced(&self, s: VertexSubset) -> (GraphSpec, Vec<usize>) {
        let old_ids: Vec<usize> = s.iter().collect();
        let vertices: Vec<Vertex> = old_ids.iter().map(|&v| self.vertices[v].clone()).collect();
        let mut edges = Vec::new();
        for (i, &a) in old_ids.iter().enumerate() {
            for (j, &b) in old_ids.iter().enumerate().skip(i + 1) {
                if self.adjacent(a, b) {
                    edges.push((i, j));
                }
            }
        }
        (GraphSpec::new(vertices, &edges).expect("induced subgraph is valid"), old_ids)
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v.name == name)
    }

    pub fn all_enumerable(&self) -> bool {
        self.vertices.iter().all(|v| v.group.is_enumerable())
    }

    pub fn from_json(text: &str) -> Result<Self, GraphError> {
        let raw: RawGraph = serde_json::from_str(text)?;
        raw.build()
    }

    pub fn to_json(&self) -> String {
        let raw = RawGraph::from_spec(self);
        serde_json::to_string_pretty(&raw).expect("graph serializes")
    }
}

// ---- JSON schema ----

#[derive(Serialize, Deserialize)]
struct RawGraph {
    vertices: Vec<RawVertex>,
    edges: Vec<(String, String)>,
}

#[derive(Serialize, Deserialize)]
struct RawVertex {
    name: String,
    group: RawGroup,
}

#[derive(Serialize, Deserialize)]
struct RawGroup {
    kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    order: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    sigma: Option<RawSeries>,
    #[serde(skip_serializing_if = "Option::is_none")]
    sigma_conj: Option<RawSeries>,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum RawSeries {
    Coeffs(Vec<i64>),
    Rational { num: Vec<i64>, den: Vec<i64> },
}

impl RawSeries {
    fn build(&self) -> Result<CustomSeries, GraphError> {
        match self {
            RawSeries::Coeffs(c) => {
                Ok(CustomSeries::Coeffs(c.iter().map(|&x| BigInt::from(x)).collect()))
            }
            RawSeries::Rational { num, den } => {
                Ok(CustomSeries::Rational(RationalSeries::from_i64(num, den)?))
            }
        }
    }

    fn from_custom(c: &CustomSeries) -> RawSeries {
        use num_traits::ToPrimitive;
        match c {
            CustomSeries::Coeffs(v) => {
                RawSeries::Coeffs(v.iter().map(|x| x.to_i64().unwrap_or(i64::MAX)).collect())
            }
            CustomSeries::Rational(r) => RawSeries::Rational {
                num: r.numerator().coeffs().iter().map(|x| x.to_i64().unwrap_or(i64::MAX)).collect(),
                den: r.denominator().coeffs().iter().map(|x| x.to_i64().unwrap_or(i64::MAX)).collect(),
            },
        }
    }
}

impl RawGraph {
    fn build(&self) -> Result<GraphSpec, GraphError> {
        let mut vertices = Vec::with_capacity(self.vertices.len());
        for rv in &self.vertices {
            if vertices.iter().any(|v: &Vertex| v.name == rv.name) {
                return Err(GraphError::DuplicateVertex(rv.name.clone()));
            }
            let group = match rv.group.kind.as_str() {
                "cyclic" => {
                    let m = rv.group.order.unwrap_or(0);
                    if m < 2 {
                        return Err(GraphError::BadCyclicOrder(m));
                    }
                    GroupKind::Cyclic(m)
                }
                "infinite_cyclic" => GroupKind::InfiniteCyclic,
                "custom" => {
                    let (s, sc) = match (&rv.group.sigma, &rv.group.sigma_conj) {
                        (Some(s), Some(sc)) => (s.build()?, sc.build()?),
                        _ => return Err(GraphError::MissingCustomSeries),
                    };
                    GroupKind::Custom { sigma: s, sigma_conj: sc }
                }
                other => return Err(GraphError::UnknownKind(other.to_string())),
            };
            vertices.push(Vertex { name: rv.name.clone(), group });
        }
        let mut edges = Vec::new();
        let index = |name: &str| {
            vertices
                .iter()
                .position(|v| v.name == name)
                .ok_or_else(|| GraphError::UnknownVertex(name.to_string()))
        };
        for (a, b) in &self.edges {
            edges.push((index(a)?, index(b)?));
        }
        GraphSpec::new(vertices, &edges)
    }

    fn from_spec(g: &GraphSpec) -> RawGraph {
        let vertices = g
            .vertices
            .iter()
            .map(|v| RawVertex {
                name: v.name.clone(),
                group: match &v.group {
                    GroupKind::Cyclic(m) => RawGroup {
                        kind: "cyclic".into(),
                        order: Some(*m),
                        sigma: None,
                        sigma_conj: None,
                    },
                    GroupKind::InfiniteCyclic => RawGroup {
                        kind: "infinite_cyclic".into(),
                        order: None,
                        sigma: None,
                        sigma_conj: None,
                    },
                    GroupKind::Custom { sigma, sigma_conj } => RawGroup {
                        kind: "custom".into(),
                        order: None,
                        sigma: Some(RawSeries::from_custom(sigma)),
                        sigma_conj: Some(RawSeries::from_custom(sigma_conj)),
                    },
                },
            })
            .collect();
        let mut edges = Vec::new();
        for a in 0..g.vertex_count() {
            for b in a + 1..g.vertex_count() {
                if g.adjacent(a, b) {
                    edges.push((g.vertices[a].name.clone(), g.vertices[b].name.clone()));
                }
            }
        }
        RawGraph { vertices, edges }
    }
}

/// The running example: four order-2 vertex groups on a 3-edge path.
pub fn path4() -> GraphSpec {
    racg_path(4)
}

pub fn racg_path(n: usize) -> GraphSpec {
    let vertices = (1..=n)
        .map(|i| Vertex { name: format!("v{}", i), group: GroupKind::Cyclic(2) })
        .collect();
    let edges: Vec<(usize, usize)> = (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect();
    GraphSpec::new(vertices, &edges).unwrap()
}
