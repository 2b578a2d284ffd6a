//! Fixture families and the fixture file format.
//!
//! A fixture file is a `#` header naming the family and its parameters,
//! a `tree` or `graph` line, then the body in the core crate's fixture
//! format.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use treemin::{Error, Graph, Result, RootedForest};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Path,
    Star,
    Caterpillar,
    CompleteBinary,
    RandomTree,
    BadTree,
    RandomGraph,
}

impl Family {
    pub const ALL: [Family; 7] = [
        Family::Path,
        Family::Star,
        Family::Caterpillar,
        Family::CompleteBinary,
        Family::RandomTree,
        Family::BadTree,
        Family::RandomGraph,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Path => "path",
            Family::Star => "star",
            Family::Caterpillar => "caterpillar",
            Family::CompleteBinary => "complete_binary",
            Family::RandomTree => "random_tree",
            Family::BadTree => "bad_tree",
            Family::RandomGraph => "random_graph",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::BadParams(format!("unknown family `{s}`")))
    }
}

/// Family-specific knobs; `None` picks the default.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Params {
    /// bad_tree: number of single-node children of the root
    /// (default `⌈n / log2 n⌉`).
    pub k: Option<usize>,
    /// random_graph: total edge count (default `2n`, capped).
    pub edges: Option<usize>,
}

#[derive(Clone, Debug)]
pub enum Body {
    Tree(RootedForest),
    Graph(Graph),
}

#[derive(Clone, Debug)]
pub struct Fixture {
    pub family: Family,
    pub n: usize,
    pub seed: u64,
    pub params: Params,
    pub body: Body,
}

impl Fixture {
    pub fn tree(&self) -> Result<&RootedForest> {
        match &self.body {
            Body::Tree(t) => Ok(t),
            Body::Graph(_) => Err(Error::BadParams(format!("{} fixture is not a tree", self.family))),
        }
    }

    /// The fixture as an undirected graph (trees lose their rooting).
    pub fn graph(&self) -> Graph {
        match &self.body {
            Body::Graph(g) => g.clone(),
            Body::Tree(t) => {
                let edges: Vec<(usize, usize)> = t
                    .nodes()
                    .filter_map(|v| t.parent(v).map(|p| (p.index(), v.index())))
                    .collect();
                Graph::new(t.len(), &edges).expect("tree edges form a simple graph")
            }
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("# family {} n {} seed {}", self.family, self.n, self.seed);
        if let Some(k) = self.params.k {
            out += &format!(" k {k}");
        }
        if let Some(m) = self.params.edges {
            out += &format!(" edges {m}");
        }
        out.push('\n');
        match &self.body {
            Body::Tree(t) => {
                out += "tree\n";
                out += &t.to_fixture();
            }
            Body::Graph(g) => {
                out += "graph\n";
                out += &g.to_fixture();
            }
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let header = lines.next().unwrap_or_default();
        let bad = |line, msg: &str| Error::Parse { line, msg: msg.into() };
        let words: Vec<&str> = header.trim_start_matches('#').split_whitespace().collect();
        if !words.len().is_multiple_of(2) {
            return Err(bad(1, "header must be key/value pairs"));
        }
        let (mut family, mut n, mut seed, mut params) = (None, None, 0, Params::default());
        for kv in words.chunks(2) {
            let num = || kv[1].parse::<usize>().map_err(|_| bad(1, "bad number in header"));
            match kv[0] {
                "family" => family = Some(kv[1].parse::<Family>()?),
                "n" => n = Some(num()?),
                "seed" => seed = kv[1].parse().map_err(|_| bad(1, "bad seed"))?,
                "k" => params.k = Some(num()?),
                "edges" => params.edges = Some(num()?),
                _ => return Err(bad(1, "unknown header key")),
            }
        }
        let family = family.ok_or_else(|| bad(1, "missing family"))?;
        let n = n.ok_or_else(|| bad(1, "missing n"))?;
        let rest: String = lines.clone().skip(1).map(|l| format!("{l}\n")).collect();
        let body = match lines.next().map(str::trim) {
            Some("tree") => Body::Tree(RootedForest::parse_fixture(&rest)?),
            Some("graph") => Body::Graph(Graph::parse_fixture(&rest)?),
            _ => return Err(bad(2, "expected `tree` or `graph`")),
        };
        Ok(Fixture { family, n, seed, params, body })
    }
}

fn from_parents(p: &[Option<usize>]) -> RootedForest {
    RootedForest::from_parents(p).expect("generated parents form a tree")
}

/// `k` for the bad tree when none is given.
pub fn default_bad_k(n: usize) -> usize {
    if n < 2 {
        return 0;
    }
    (n as f64 / (n as f64).log2()).ceil() as usize
}

/// Root 0 with `k` single-node children `1..=k` and one chain of
/// `n − k − 1` nodes `k+1..n`, attached last.
pub fn bad_tree(n: usize, k: usize) -> Result<RootedForest> {
    if n < 2 || k + 2 > n {
        return Err(Error::BadParams(format!("bad_tree needs 0 ≤ k ≤ n − 2, got n={n} k={k}")));
    }
    let p: Vec<Option<usize>> = (0..n)
        .map(|i| match i {
            0 => None,
            i if i <= k + 1 => Some(0),
            i => Some(i - 1),
        })
        .collect();
    Ok(from_parents(&p))
}

/// Uniform labeled tree from a random Prüfer sequence, rooted at 0.
pub fn random_tree(n: usize, rng: &mut ChaCha8Rng) -> RootedForest {
    if n <= 2 {
        return from_parents(&(0..n).map(|i| i.checked_sub(1)).collect::<Vec<_>>());
    }
    let code: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    let mut degree = vec![1usize; n];
    for &c in &code {
        degree[c] += 1;
    }
    let mut adj = vec![Vec::new(); n];
    let mut leaves: std::collections::BinaryHeap<std::cmp::Reverse<usize>> =
        (0..n).filter(|&v| degree[v] == 1).map(std::cmp::Reverse).collect();
    for &c in &code {
        let std::cmp::Reverse(leaf) = leaves.pop().unwrap();
        adj[leaf].push(c);
        adj[c].push(leaf);
        degree[c] -= 1;
        if degree[c] == 1 {
            leaves.push(std::cmp::Reverse(c));
        }
    }
    let std::cmp::Reverse(a) = leaves.pop().unwrap();
    let std::cmp::Reverse(b) = leaves.pop().unwrap();
    adj[a].push(b);
    adj[b].push(a);
    let mut parent = vec![None; n];
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(x) = stack.pop() {
        for &y in &adj[x] {
            if !seen[y] {
                seen[y] = true;
                parent[y] = Some(x);
                stack.push(y);
            }
        }
    }
    from_parents(&parent)
}

/// A random tree plus random extra edges, `edges` in total.
pub fn random_graph(n: usize, edges: usize, rng: &mut ChaCha8Rng) -> Result<Graph> {
    let max = n * n.saturating_sub(1) / 2;
    if edges + 1 < n || edges > max {
        return Err(Error::BadParams(format!("random_graph needs n − 1 ≤ edges ≤ {max}, got {edges}")));
    }
    let t = random_tree(n, rng);
    let mut list: Vec<(usize, usize)> = t
        .nodes()
        .filter_map(|v| t.parent(v).map(|p| (p.index(), v.index())))
        .collect();
    let mut have: std::collections::HashSet<(usize, usize)> = list.iter().copied().map(|(a, b)| (a.min(b), a.max(b))).collect();
    if edges * 2 > max {
        // dense: sample from the complement list
        let mut rest: Vec<(usize, usize)> = (0..n)
            .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
            .filter(|e| !have.contains(e))
            .collect();
        rest.shuffle(rng);
        list.extend(rest.into_iter().take(edges - list.len()));
    } else {
        while list.len() < edges {
            let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
            if a != b && have.insert((a.min(b), a.max(b))) {
                list.push((a, b));
            }
        }
    }
    list.shuffle(rng);
    Graph::new(n, &list)
}

/// Builds a fixture; deterministic in `seed`.
pub fn generate(family: Family, n: usize, seed: u64, params: Params) -> Result<Fixture> {
    if n == 0 {
        return Err(Error::BadParams("n must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut params = params;
    let body = match family {
        Family::Path => Body::Tree(from_parents(&(0..n).map(|i| i.checked_sub(1)).collect::<Vec<_>>())),
        Family::Star => Body::Tree(from_parents(&(0..n).map(|i| (i > 0).then_some(0)).collect::<Vec<_>>())),
        Family::Caterpillar => {
            // spine 0..s, every other node hangs off a spine node
            let s = n.div_ceil(2);
            let p: Vec<Option<usize>> = (0..n)
                .map(|i| match i {
                    0 => None,
                    i if i < s => Some(i - 1),
                    i => Some((i - s) % s),
                })
                .collect();
            Body::Tree(from_parents(&p))
        }
        Family::CompleteBinary => {
            Body::Tree(from_parents(&(0..n).map(|i| i.checked_sub(1).map(|j| j / 2)).collect::<Vec<_>>()))
        }
        Family::RandomTree => Body::Tree(random_tree(n, &mut rng)),
        Family::BadTree => {
            let k = *params.k.get_or_insert(default_bad_k(n));
            Body::Tree(bad_tree(n, k)?)
        }
        Family::RandomGraph => {
            let max = n * n.saturating_sub(1) / 2;
            let m = *params.edges.get_or_insert((2 * n).min(max).max(n - 1));
            Body::Graph(random_graph(n, m, &mut rng)?)
        }
    };
    Ok(Fixture { family, n, seed, params, body })
}
