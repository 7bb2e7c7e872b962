//! Finite connected networks with exact conductances.
//!
//! A [`Network`] owns an ordered vertex list (ids are opaque strings mapped to
//! dense indices in insertion order) and a symmetric conductance function.
//! Every matrix produced from a network uses that dense index order.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt::Write as _;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::matrix::RationalMatrix;
use crate::rational::{self, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NetworkError {
    #[error("graph is disconnected: vertex `{unreachable}` is not reachable from `{root}`")]
    DisconnectedGraph { root: String, unreachable: String },
    #[error("edge {u}-{v} has non-positive conductance {value}")]
    InvalidConductance { u: String, v: String, value: String },
    #[error("edge {u}-{v} appears more than once")]
    DuplicateEdge { u: String, v: String },
    #[error("self-loop at vertex `{0}`")]
    SelfLoop(String),
    #[error("a network needs at least two vertices, got {0}")]
    TooFewVertices(usize),
    #[error("edge list line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
}

/// One undirected edge with its conductance.
pub type Edge = (String, String, Rational);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Network {
    ids: Vec<String>,
    index: HashMap<String, usize>,
    /// Neighbors of each vertex, sorted by index.
    adjacency: Vec<Vec<(usize, Rational)>>,
    degree: Vec<Rational>,
}

impl Network {
    /// Validates an edge list and builds the network.
    pub fn from_edges<I, S>(edges: I) -> Result<Self, NetworkError>
    where
        I: IntoIterator<Item = (S, S, Rational)>,
        S: Into<String>,
    {
        Self::with_vertex_order(&[], edges)
    }

    /// Like [`Network::from_edges`], but the ids in `leading` take the first
    /// indices in the given order. Every leading id must appear in an edge.
    pub fn with_vertex_order<I, S>(leading: &[String], edges: I) -> Result<Self, NetworkError>
    where
        I: IntoIterator<Item = (S, S, Rational)>,
        S: Into<String>,
    {
        let mut ids: Vec<String> = Vec::new();
        let mut index: HashMap<String, usize> = HashMap::new();
        let mut adjacency: Vec<Vec<(usize, Rational)>> = Vec::new();
        let mut seen: HashSet<(usize, usize)> = HashSet::new();
        for id in leading {
            if !index.contains_key(id) {
                index.insert(id.clone(), ids.len());
                ids.push(id.clone());
                adjacency.push(Vec::new());
            }
        }

        let mut intern = |id: String, ids: &mut Vec<String>, adj: &mut Vec<Vec<(usize, Rational)>>| {
            *index.entry(id.clone()).or_insert_with(|| {
                ids.push(id);
                adj.push(Vec::new());
                ids.len() - 1
            })
        };

        for (u, v, c) in edges {
            let (u, v) = (u.into(), v.into());
            if u == v {
                return Err(NetworkError::SelfLoop(u));
            }
            if c <= Rational::zero() {
                return Err(NetworkError::InvalidConductance {
                    u,
                    v,
                    value: rational::format(&c),
                });
            }
            let a = intern(u.clone(), &mut ids, &mut adjacency);
            let b = intern(v.clone(), &mut ids, &mut adjacency);
            if !seen.insert((a.min(b), a.max(b))) {
                return Err(NetworkError::DuplicateEdge { u, v });
            }
            adjacency[a].push((b, c.clone()));
            adjacency[b].push((a, c));
        }

        if ids.len() < 2 {
            return Err(NetworkError::TooFewVertices(ids.len()));
        }
        if let Some(v) = adjacency.iter().position(|nbrs| nbrs.is_empty()) {
            let root = if v == 0 { 1 } else { 0 };
            return Err(NetworkError::DisconnectedGraph {
                root: ids[root].clone(),
                unreachable: ids[v].clone(),
            });
        }
        for nbrs in &mut adjacency {
            nbrs.sort_by_key(|(j, _)| *j);
        }
        let degree = adjacency
            .iter()
            .map(|nbrs| nbrs.iter().map(|(_, c)| c).sum())
            .collect();

        let index = ids.iter().cloned().enumerate().map(|(i, id)| (id, i)).collect();
        let net = Network {
            ids,
            index,
            adjacency,
            degree,
        };
        if let Some(far) = net.bfs(0).iter().position(|d| d.is_none()) {
            return Err(NetworkError::DisconnectedGraph {
                root: net.ids[0].clone(),
                unreachable: net.ids[far].clone(),
            });
        }
        Ok(net)
    }

    /// Parses the whitespace-separated edge-list format: `u v [p/q]` per line,
    /// `#` starts a comment line, conductance defaults to `1`.
    pub fn parse_edge_list(text: &str) -> Result<Self, NetworkError> {
        let mut edges = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            let parse_err = |reason: String| NetworkError::Parse {
                line: lineno + 1,
                reason,
            };
            let c = match fields.len() {
                2 => Rational::one(),
                3 => rational::parse(fields[2]).map_err(|e| parse_err(e.to_string()))?,
                k => return Err(parse_err(format!("expected 2 or 3 fields, found {k}"))),
            };
            edges.push((fields[0].to_string(), fields[1].to_string(), c));
        }
        Self::from_edges(edges)
    }

    /// Serializes back to the edge-list format, one line per edge in index order.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for (u, v, c) in self.edges() {
            if c.is_one() {
                let _ = writeln!(out, "{} {}", self.ids[u], self.ids[v]);
            } else {
                let _ = writeln!(out, "{} {} {}", self.ids[u], self.ids[v], rational::format(&c));
            }
        }
        out
    }

    pub fn order(&self) -> usize {
        self.ids.len()
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn id(&self, v: usize) -> &str {
        &self.ids[v]
    }

    pub fn index_of(&self, id: &str) -> Result<usize, NetworkError> {
        self.index
            .get(id)
            .copied()
            .ok_or_else(|| NetworkError::UnknownVertex(id.to_string()))
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adjacency[v].iter().map(|(j, _)| *j)
    }

    pub fn weighted_neighbors(&self, v: usize) -> &[(usize, Rational)] {
        &self.adjacency[v]
    }

    pub fn conductance(&self, u: usize, v: usize) -> Rational {
        self.adjacency[u]
            .binary_search_by_key(&v, |(j, _)| *j)
            .map(|pos| self.adjacency[u][pos].1.clone())
            .unwrap_or_else(|_| Rational::zero())
    }

    pub fn is_adjacent(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].binary_search_by_key(&v, |(j, _)| *j).is_ok()
    }

    /// Weighted degree k(x).
    pub fn degree(&self, v: usize) -> &Rational {
        &self.degree[v]
    }

    /// Number of neighbors, ignoring conductances.
    pub fn valency(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    /// Edges as `(u, v, c)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize, Rational)> {
        let mut out = Vec::new();
        for (u, nbrs) in self.adjacency.iter().enumerate() {
            for (v, c) in nbrs {
                if u < *v {
                    out.push((u, *v, c.clone()));
                }
            }
        }
        out
    }

    pub fn is_unit_weighted(&self) -> bool {
        self.adjacency.iter().flatten().all(|(_, c)| c.is_one())
    }

    fn bfs(&self, root: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.order()];
        dist[root] = Some(0);
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap_or(0);
            for v in self.neighbors(u) {
                if dist[v].is_none() {
                    dist[v] = Some(du + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }
}

/// Builds a network from `(u, v, c)` triples.
pub fn build_network<I, S>(edges: I) -> Result<Network, NetworkError>
where
    I: IntoIterator<Item = (S, S, Rational)>,
    S: Into<String>,
{
    Network::from_edges(edges)
}

fn unit_edges(pairs: impl IntoIterator<Item = (String, String)>) -> Vec<Edge> {
    pairs.into_iter().map(|(u, v)| (u, v, Rational::one())).collect()
}

/// Unit-conductance complete bipartite graph `K_{a,b}`.
///
/// The `a` side gets ids `a0, a1, ...` and is listed first; the `b` side
/// gets `b0, b1, ...`.
pub fn make_complete_bipartite(a: usize, b: usize) -> Result<Network, NetworkError> {
    if a == 0 || b == 0 {
        return Err(NetworkError::TooFewVertices(a + b));
    }
    let mut pairs = Vec::with_capacity(a * b);
    for i in 0..a {
        for j in 0..b {
            pairs.push((format!("a{i}"), format!("b{j}")));
        }
    }
    let order: Vec<String> = (0..a)
        .map(|i| format!("a{i}"))
        .chain((0..b).map(|j| format!("b{j}")))
        .collect();
    Network::with_vertex_order(&order, unit_edges(pairs))
}

/// Subdivision graph: each edge `{u, v}` becomes a path `u - w - v`.
///
/// Original vertices keep their ids and indices; the fresh vertex of edge
/// `{u, v}` is called `u|v` (primes are appended on a clash) and fresh
/// vertices follow in edge order.
pub fn make_subdivision(g: &Network) -> Network {
    let mut taken: HashSet<String> = g.ids().iter().cloned().collect();
    let mut pairs = Vec::new();
    for (u, v, _) in g.edges() {
        let mut name = format!("{}|{}", g.id(u), g.id(v));
        while taken.contains(&name) {
            name.push('\'');
        }
        taken.insert(name.clone());
        pairs.push((g.id(u).to_string(), name.clone()));
        pairs.push((name, g.id(v).to_string()));
    }
    Network::with_vertex_order(g.ids(), unit_edges(pairs))
        .expect("subdivision of a connected network is connected")
}

/// Unit complete graph on `n` vertices `v0..`.
pub fn make_complete(n: usize) -> Result<Network, NetworkError> {
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            pairs.push((format!("v{i}"), format!("v{j}")));
        }
    }
    Network::from_edges(unit_edges(pairs)).map_err(|e| match e {
        NetworkError::TooFewVertices(_) => NetworkError::TooFewVertices(n),
        other => other,
    })
}

/// Triangle `x1, x2, x3` with `c(x1,x2)=c1`, `c(x2,x3)=c2`, `c(x3,x1)=c3`.
pub fn make_triangle(c1: Rational, c2: Rational, c3: Rational) -> Result<Network, NetworkError> {
    Network::from_edges([("x1", "x2", c1), ("x2", "x3", c2), ("x3", "x1", c3)])
}

/// Unit cycle on `n ≥ 3` vertices `v0..`.
pub fn make_cycle(n: usize) -> Result<Network, NetworkError> {
    if n < 3 {
        return Err(NetworkError::TooFewVertices(n));
    }
    Network::from_edges(unit_edges((0..n).map(|i| (format!("v{i}"), format!("v{}", (i + 1) % n)))))
}

/// Unit path on `n ≥ 2` vertices `v0..`.
pub fn make_path(n: usize) -> Result<Network, NetworkError> {
    Network::from_edges(unit_edges((1..n).map(|i| (format!("v{}", i - 1), format!("v{i}")))))
        .map_err(|_| NetworkError::TooFewVertices(n))
}

/// The Petersen graph on `p0..p9` (outer 5-cycle, spokes, inner pentagram).
pub fn make_petersen() -> Network {
    let mut pairs = Vec::new();
    for i in 0..5 {
        pairs.push((format!("p{i}"), format!("p{}", (i + 1) % 5)));
        pairs.push((format!("p{i}"), format!("p{}", i + 5)));
        pairs.push((format!("p{}", i + 5), format!("p{}", (i + 2) % 5 + 5)));
    }
    let order: Vec<String> = (0..10).map(|i| format!("p{i}")).collect();
    Network::with_vertex_order(&order, unit_edges(pairs)).expect("Petersen graph is valid")
}

/// All-pairs hop distances.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceTable {
    dist: Vec<Vec<usize>>,
    diameter: usize,
}

impl DistanceTable {
    pub fn get(&self, x: usize, y: usize) -> usize {
        self.dist[x][y]
    }

    pub fn diameter(&self) -> usize {
        self.diameter
    }

    pub fn order(&self) -> usize {
        self.dist.len()
    }

    pub fn eccentricity(&self, x: usize) -> usize {
        self.dist[x].iter().copied().max().unwrap_or(0)
    }

    /// |Γ_i(x)|
    pub fn sphere_size(&self, x: usize, i: usize) -> usize {
        self.dist[x].iter().filter(|&&d| d == i).count()
    }

    /// B_i(x) = Σ_{j ≤ i} |Γ_j(x)|
    pub fn ball_size(&self, x: usize, i: usize) -> usize {
        self.dist[x].iter().filter(|&&d| d <= i).count()
    }
}

/// Breadth-first distances from every vertex; conductances are ignored.
pub fn distances(net: &Network) -> DistanceTable {
    let dist: Vec<Vec<usize>> = (0..net.order())
        .map(|x| {
            net.bfs(x)
                .into_iter()
                .map(|d| d.expect("networks are connected"))
                .collect()
        })
        .collect();
    let diameter = dist.iter().flatten().copied().max().unwrap_or(0);
    DistanceTable { dist, diameter }
}

/// Combinatorial Laplacian: `L(x,x) = k(x)`, `L(x,y) = -c(x,y)`.
pub fn laplacian(net: &Network) -> RationalMatrix {
    let n = net.order();
    let mut l = RationalMatrix::zeros(n);
    for x in 0..n {
        l.set(x, x, net.degree(x).clone());
        for (y, c) in net.weighted_neighbors(x) {
            l.set(x, *y, -c.clone());
        }
    }
    l
}
