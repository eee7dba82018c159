//! Instance model: edge-labeled multigraphs, bipartite signature grids
//! with optional dangling edges, and the contraction engine that turns a
//! gate into its full tensor or symmetric transfer matrix.

use serde_json::Value;

use crate::cyclo::{cyc_parse, Cyc12};
use crate::poly::CMat;
use crate::Error;

/// Undirected multigraph with self-loops, given by an edge multiset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeLabeledGraph {
    pub vertex_count: usize,
    pub edges: Vec<(usize, usize)>,
}

impl EdgeLabeledGraph {
    pub fn new(vertex_count: usize, edges: Vec<(usize, usize)>) -> Result<Self, Error> {
        for &(u, v) in &edges {
            if u >= vertex_count || v >= vertex_count {
                return Err(Error::MalformedDocument(format!(
                    "edge ({u},{v}) out of range for {vertex_count} vertices"
                )));
            }
        }
        Ok(EdgeLabeledGraph { vertex_count, edges })
    }

    /// Degree with self-loops counting twice.
    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .map(|&(a, b)| (a == v) as usize + (b == v) as usize)
            .sum()
    }

    pub fn check_three_regular(&self) -> Result<(), Error> {
        for v in 0..self.vertex_count {
            let d = self.degree(v);
            if d != 3 {
                return Err(Error::NotThreeRegular { vertex: v, degree: d });
            }
        }
        Ok(())
    }

    /// Connected components as a vertex -> component-id map.
    pub fn components(&self) -> (usize, Vec<usize>) {
        let mut parent: Vec<usize> = (0..self.vertex_count).collect();
        fn find(parent: &mut Vec<usize>, x: usize) -> usize {
            let mut r = x;
            while parent[r] != r {
                r = parent[r];
            }
            let mut c = x;
            while parent[c] != r {
                let next = parent[c];
                parent[c] = r;
                c = next;
            }
            r
        }
        for &(u, v) in &self.edges {
            let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
            if ru != rv {
                parent[ru] = rv;
            }
        }
        let mut ids = vec![usize::MAX; self.vertex_count];
        let mut count = 0;
        for v in 0..self.vertex_count {
            let r = find(&mut parent, v);
            if ids[r] == usize::MAX {
                ids[r] = count;
                count += 1;
            }
            ids[v] = ids[r];
        }
        (count, ids)
    }

    /// 2-colorability; self-loops make a graph non-bipartite.
    pub fn is_bipartite(&self) -> bool {
        let mut color = vec![u8::MAX; self.vertex_count];
        let mut adj = vec![Vec::new(); self.vertex_count];
        for &(u, v) in &self.edges {
            if u == v {
                return false;
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for s in 0..self.vertex_count {
            if color[s] != u8::MAX {
                continue;
            }
            color[s] = 0;
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for &u in &adj[v] {
                    if color[u] == u8::MAX {
                        color[u] = 1 - color[v];
                        stack.push(u);
                    } else if color[u] == color[v] {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// Symmetric signature [g_0, ..., g_k] of arity k.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymSignature {
    values: Vec<Cyc12>,
}

impl SymSignature {
    pub fn new(values: Vec<Cyc12>) -> Self {
        assert!(!values.is_empty());
        SymSignature { values }
    }

    pub fn from_ints(values: &[i64]) -> Self {
        SymSignature::new(values.iter().map(|&n| Cyc12::from_int(n)).collect())
    }

    pub fn arity(&self) -> usize {
        self.values.len() - 1
    }

    pub fn at(&self, hamming_weight: usize) -> &Cyc12 {
        &self.values[hamming_weight]
    }

    pub fn values(&self) -> &[Cyc12] {
        &self.values
    }

    /// Parse a bracketed list of scalar literals, e.g. `[2,1,3]`.
    pub fn parse(text: &str) -> Result<Self, Error> {
        let t = text.trim();
        let inner = t
            .strip_prefix('[')
            .and_then(|s| s.strip_suffix(']'))
            .ok_or_else(|| Error::Syntax("signature must be a bracketed list".into()))?;
        let values: Result<Vec<Cyc12>, Error> = split_top_level(inner).iter().map(|s| cyc_parse(s)).collect();
        let values = values?;
        if values.is_empty() {
            return Err(Error::Syntax("signature must be non-empty".into()));
        }
        Ok(SymSignature::new(values))
    }
}

fn split_top_level(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut cur = String::new();
    for ch in s.chars() {
        match ch {
            '(' => {
                depth += 1;
                cur.push(ch);
            }
            ')' => {
                depth = depth.saturating_sub(1);
                cur.push(ch);
            }
            ',' if depth == 0 => {
                out.push(std::mem::take(&mut cur));
            }
            _ => cur.push(ch),
        }
    }
    out.push(cur);
    out
}

impl std::fmt::Display for SymSignature {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// Generator label: a concrete signature or an interpolation SLOT
/// (an arity-1 placeholder filled later with a unary signature).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GenLabel {
    Sig(SymSignature),
    Slot,
}

impl GenLabel {
    fn arity(&self) -> usize {
        match self {
            GenLabel::Sig(s) => s.arity(),
            GenLabel::Slot => 1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Gen,
    Rec,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GridEdge {
    pub gen: (usize, usize),
    pub rec: (usize, usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Dangling {
    pub side: Side,
    pub vertex: usize,
    pub port: usize,
}

/// Bipartite signature grid; with dangling edges it is a gate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignatureGrid {
    pub generators: Vec<GenLabel>,
    pub recognizers: Vec<SymSignature>,
    pub edges: Vec<GridEdge>,
    pub dangling: Vec<Dangling>,
}

impl SignatureGrid {
    pub fn validate(&self) -> Result<(), Error> {
        let mut gen_used: Vec<Vec<usize>> = self
            .generators
            .iter()
            .map(|g| vec![0; g.arity()])
            .collect();
        let mut rec_used: Vec<Vec<usize>> = self
            .recognizers
            .iter()
            .map(|r| vec![0; r.arity()])
            .collect();
        let mut use_port = |side: Side, vertex: usize, port: usize| -> Result<(), Error> {
            let (name, table, arity) = match side {
                Side::Gen => (
                    "generator",
                    &mut gen_used,
                    self.generators.get(vertex).map(GenLabel::arity),
                ),
                Side::Rec => (
                    "recognizer",
                    &mut rec_used,
                    self.recognizers.get(vertex).map(SymSignature::arity),
                ),
            };
            let arity = arity.ok_or(Error::DanglingPort {
                side: name,
                vertex,
                port,
                problem: "on a nonexistent vertex",
            })?;
            if port >= arity {
                return Err(Error::ArityMismatch {
                    arity,
                    degree: port + 1,
                });
            }
            table[vertex][port] += 1;
            Ok(())
        };
        for e in &self.edges {
            use_port(Side::Gen, e.gen.0, e.gen.1)?;
            use_port(Side::Rec, e.rec.0, e.rec.1)?;
        }
        for d in &self.dangling {
            use_port(d.side, d.vertex, d.port)?;
        }
        for (vertex, ports) in gen_used.iter().enumerate() {
            for (port, &n) in ports.iter().enumerate() {
                if n != 1 {
                    return Err(Error::DanglingPort {
                        side: "generator",
                        vertex,
                        port,
                        problem: if n == 0 { "unused" } else { "used more than once" },
                    });
                }
            }
        }
        for (vertex, ports) in rec_used.iter().enumerate() {
            for (port, &n) in ports.iter().enumerate() {
                if n != 1 {
                    return Err(Error::DanglingPort {
                        side: "recognizer",
                        vertex,
                        port,
                        problem: if n == 0 { "unused" } else { "used more than once" },
                    });
                }
            }
        }
        Ok(())
    }

    pub fn slot_count(&self) -> usize {
        self.generators
            .iter()
            .filter(|g| matches!(g, GenLabel::Slot))
            .count()
    }

    /// A copy of the grid with every SLOT replaced by `sig`.
    pub fn with_slots_filled(&self, sig: &SymSignature) -> SignatureGrid {
        assert_eq!(sig.arity(), 1, "SLOTs hold unary signatures");
        let mut out = self.clone();
        for g in &mut out.generators {
            if matches!(g, GenLabel::Slot) {
                *g = GenLabel::Sig(sig.clone());
            }
        }
        out
    }

    /// Exact contraction over all internal-edge assignments, with the
    /// dangling edges pinned to `dangling_bits` (bit k = dangling edge k).
    pub fn contract(&self, dangling_bits: usize) -> Result<Cyc12, Error> {
        if self.slot_count() > 0 {
            return Err(Error::UnfilledSlot);
        }
        let ne = self.edges.len();
        assert!(ne <= 24, "contraction enumerates 2^edges assignments");
        let ng = self.generators.len();
        let base_gen: Vec<usize> = (0..ng)
            .map(|v| {
                self.dangling
                    .iter()
                    .enumerate()
                    .filter(|(k, d)| {
                        d.side == Side::Gen && d.vertex == v && dangling_bits >> *k & 1 == 1
                    })
                    .count()
            })
            .collect();
        let base_rec: Vec<usize> = (0..self.recognizers.len())
            .map(|v| {
                self.dangling
                    .iter()
                    .enumerate()
                    .filter(|(k, d)| {
                        d.side == Side::Rec && d.vertex == v && dangling_bits >> *k & 1 == 1
                    })
                    .count()
            })
            .collect();
        let mut total = Cyc12::zero();
        let mut wg = vec![0usize; ng];
        let mut wr = vec![0usize; self.recognizers.len()];
        for mask in 0usize..1 << ne {
            wg.copy_from_slice(&base_gen);
            wr.copy_from_slice(&base_rec);
            for (ei, e) in self.edges.iter().enumerate() {
                if mask >> ei & 1 == 1 {
                    wg[e.gen.0] += 1;
                    wr[e.rec.0] += 1;
                }
            }
            let mut prod = Cyc12::one();
            let mut zero = false;
            for (v, g) in self.generators.iter().enumerate() {
                let sig = match g {
                    GenLabel::Sig(s) => s,
                    GenLabel::Slot => unreachable!(),
                };
                let val = sig.at(wg[v]);
                if val.is_zero() {
                    zero = true;
                    break;
                }
                prod = &prod * val;
            }
            if !zero {
                for (v, sig) in self.recognizers.iter().enumerate() {
                    let val = sig.at(wr[v]);
                    if val.is_zero() {
                        zero = true;
                        break;
                    }
                    prod = &prod * val;
                }
            }
            if !zero {
                total = &total + &prod;
            }
        }
        Ok(total)
    }
}

/// Full 2^q tensor of a gate, indexed by dangling-edge assignments in
/// declaration order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FullTensor {
    pub dangling_count: usize,
    pub values: Vec<Cyc12>,
}

impl FullTensor {
    pub fn at(&self, bits: usize) -> &Cyc12 {
        &self.values[bits]
    }
}

/// Contract a gate to its full tensor.
pub fn fgate_signature(gate: &SignatureGrid) -> Result<FullTensor, Error> {
    gate.validate()?;
    let q = gate.dangling.len();
    assert!(q >= 1, "a gate needs at least one dangling edge");
    let values: Result<Vec<Cyc12>, Error> = (0..1usize << q).map(|bits| gate.contract(bits)).collect();
    Ok(FullTensor {
        dangling_count: q,
        values: values?,
    })
}

/// Project a full tensor onto symmetric signature form, or report a
/// violating index pair.
pub fn symmetric_project(t: &FullTensor) -> Result<SymSignature, Error> {
    let q = t.dangling_count;
    let mut reps: Vec<Option<usize>> = vec![None; q + 1];
    for bits in 0..1usize << q {
        let w = bits.count_ones() as usize;
        match reps[w] {
            None => reps[w] = Some(bits),
            Some(first) => {
                if t.values[first] != t.values[bits] {
                    return Err(Error::NotSymmetric { first, second: bits });
                }
            }
        }
    }
    Ok(SymSignature::new(
        (0..=q).map(|w| t.values[reps[w].unwrap()].clone()).collect(),
    ))
}

/// The (t+1) x (r+1) matrix by which a gate with r input dangling edges
/// (recognizer side) and t output dangling edges (generator side) acts
/// on symmetric signature column vectors. Composition of gates by
/// merging outputs to inputs multiplies these matrices.
pub fn transfer_matrix(gate: &SignatureGrid) -> Result<CMat, Error> {
    let tensor = fgate_signature(gate)?;
    let inputs: Vec<usize> = gate
        .dangling
        .iter()
        .enumerate()
        .filter(|(_, d)| d.side == Side::Rec)
        .map(|(k, _)| k)
        .collect();
    let outputs: Vec<usize> = gate
        .dangling
        .iter()
        .enumerate()
        .filter(|(_, d)| d.side == Side::Gen)
        .map(|(k, _)| k)
        .collect();
    let r = inputs.len();
    let t = outputs.len();
    let mut entries = vec![Cyc12::zero(); (t + 1) * (r + 1)];
    for wout in 0..=t {
        let mut first_sums: Option<(usize, Vec<Cyc12>)> = None;
        // Every output assignment of the same weight must induce the
        // same input-weight sums, otherwise the gate does not preserve
        // symmetric signatures.
        for ybits in 0..1usize << t {
            if (ybits.count_ones() as usize) != wout {
                continue;
            }
            let mut sums = vec![Cyc12::zero(); r + 1];
            for xbits in 0..1usize << r {
                let mut idx = 0usize;
                for (pos, &k) in outputs.iter().enumerate() {
                    if ybits >> pos & 1 == 1 {
                        idx |= 1 << k;
                    }
                }
                for (pos, &k) in inputs.iter().enumerate() {
                    if xbits >> pos & 1 == 1 {
                        idx |= 1 << k;
                    }
                }
                let w = xbits.count_ones() as usize;
                sums[w] = &sums[w] + tensor.at(idx);
            }
            match &first_sums {
                None => first_sums = Some((ybits, sums)),
                Some((yfirst, expected)) => {
                    if *expected != sums {
                        return Err(Error::NotSymmetric {
                            first: *yfirst,
                            second: ybits,
                        });
                    }
                }
            }
        }
        let (_, sums) = first_sums.expect("every weight has a representative");
        for win in 0..=r {
            entries[wout * (r + 1) + win] = sums[win].clone();
        }
    }
    Ok(CMat::new(t + 1, r + 1, entries))
}

/// Convert a 3-regular edge-labeled graph into a (2,3)-regular grid:
/// each edge becomes a degree-2 generator carrying `edge_sig`, each
/// vertex a recognizer carrying `vertex_sig`.
pub fn graph_to_grid(
    g: &EdgeLabeledGraph,
    edge_sig: &SymSignature,
    vertex_sig: &SymSignature,
) -> Result<SignatureGrid, Error> {
    g.check_three_regular()?;
    if edge_sig.arity() != 2 {
        return Err(Error::ArityMismatch {
            arity: edge_sig.arity(),
            degree: 2,
        });
    }
    if vertex_sig.arity() != 3 {
        return Err(Error::ArityMismatch {
            arity: vertex_sig.arity(),
            degree: 3,
        });
    }
    let mut next_port = vec![0usize; g.vertex_count];
    let mut edges = Vec::with_capacity(2 * g.edges.len());
    for (ei, &(u, v)) in g.edges.iter().enumerate() {
        let pu = next_port[u];
        next_port[u] += 1;
        edges.push(GridEdge {
            gen: (ei, 0),
            rec: (u, pu),
        });
        let pv = next_port[v];
        next_port[v] += 1;
        edges.push(GridEdge {
            gen: (ei, 1),
            rec: (v, pv),
        });
    }
    let grid = SignatureGrid {
        generators: vec![GenLabel::Sig(edge_sig.clone()); g.edges.len()],
        recognizers: vec![vertex_sig.clone(); g.vertex_count],
        edges,
        dangling: Vec::new(),
    };
    grid.validate()?;
    Ok(grid)
}

/// A parsed instance document.
#[derive(Clone, Debug)]
pub enum Instance {
    Graph(EdgeLabeledGraph),
    Grid(SignatureGrid),
}

/// Parse the JSON instance format.
pub fn parse_instance(document: &str) -> Result<Instance, Error> {
    let v: Value = serde_json::from_str(document)
        .map_err(|e| Error::MalformedDocument(e.to_string()))?;
    let ty = v
        .get("type")
        .and_then(Value::as_str)
        .ok_or_else(|| Error::MalformedDocument("missing \"type\" field".into()))?;
    match ty {
        "graph" => {
            let n = v
                .get("vertices")
                .and_then(Value::as_u64)
                .ok_or_else(|| Error::MalformedDocument("missing \"vertices\" count".into()))?
                as usize;
            let mut edges = Vec::new();
            for e in expect_array(&v, "edges")? {
                let pair = e
                    .as_array()
                    .filter(|a| a.len() == 2)
                    .ok_or_else(|| Error::MalformedDocument("edge must be a pair".into()))?;
                let u = pair[0]
                    .as_u64()
                    .ok_or_else(|| Error::MalformedDocument("edge endpoint must be an index".into()))?;
                let w = pair[1]
                    .as_u64()
                    .ok_or_else(|| Error::MalformedDocument("edge endpoint must be an index".into()))?;
                edges.push((u as usize, w as usize));
            }
            Ok(Instance::Graph(EdgeLabeledGraph::new(n, edges)?))
        }
        "grid" => {
            let mut generators = Vec::new();
            for gv in expect_array(&v, "generators")? {
                let sig = gv
                    .get("sig")
                    .ok_or_else(|| Error::MalformedDocument("generator missing \"sig\"".into()))?;
                if sig.as_str() == Some("SLOT") {
                    generators.push(GenLabel::Slot);
                } else {
                    generators.push(GenLabel::Sig(parse_sig_value(sig)?));
                }
            }
            let mut recognizers = Vec::new();
            for rv in expect_array(&v, "recognizers")? {
                let sig = rv
                    .get("sig")
                    .ok_or_else(|| Error::MalformedDocument("recognizer missing \"sig\"".into()))?;
                recognizers.push(parse_sig_value(sig)?);
            }
            let mut edges = Vec::new();
            for ev in expect_array(&v, "edges")? {
                edges.push(GridEdge {
                    gen: parse_endpoint(ev.get("gen"))?,
                    rec: parse_endpoint(ev.get("rec"))?,
                });
            }
            let mut dangling = Vec::new();
            if let Some(ds) = v.get("dangling") {
                let ds = ds
                    .as_array()
                    .ok_or_else(|| Error::MalformedDocument("\"dangling\" must be an array".into()))?;
                for dv in ds {
                    let side = match dv.get("side").and_then(Value::as_str) {
                        Some("gen") => Side::Gen,
                        Some("rec") => Side::Rec,
                        _ => {
                            return Err(Error::MalformedDocument(
                                "dangling side must be \"gen\" or \"rec\"".into(),
                            ))
                        }
                    };
                    let vertex = dv.get("vertex").and_then(Value::as_u64).ok_or_else(|| {
                        Error::MalformedDocument("dangling entry missing \"vertex\"".into())
                    })? as usize;
                    let port = dv.get("port").and_then(Value::as_u64).ok_or_else(|| {
                        Error::MalformedDocument("dangling entry missing \"port\"".into())
                    })? as usize;
                    dangling.push(Dangling { side, vertex, port });
                }
            }
            let grid = SignatureGrid {
                generators,
                recognizers,
                edges,
                dangling,
            };
            grid.validate()?;
            Ok(Instance::Grid(grid))
        }
        other => Err(Error::MalformedDocument(format!(
            "unknown instance type {other:?}"
        ))),
    }
}

fn expect_array<'a>(v: &'a Value, key: &str) -> Result<&'a Vec<Value>, Error> {
    v.get(key)
        .and_then(Value::as_array)
        .ok_or_else(|| Error::MalformedDocument(format!("missing array field {key:?}")))
}

fn parse_endpoint(v: Option<&Value>) -> Result<(usize, usize), Error> {
    let pair = v
        .and_then(Value::as_array)
        .filter(|a| a.len() == 2)
        .ok_or_else(|| Error::MalformedDocument("edge endpoint must be [vertex, port]".into()))?;
    let a = pair[0]
        .as_u64()
        .ok_or_else(|| Error::MalformedDocument("endpoint index must be an integer".into()))?;
    let b = pair[1]
        .as_u64()
        .ok_or_else(|| Error::MalformedDocument("endpoint port must be an integer".into()))?;
    Ok((a as usize, b as usize))
}

fn parse_sig_value(v: &Value) -> Result<SymSignature, Error> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::MalformedDocument("signature must be a list of literals".into()))?;
    let mut values = Vec::with_capacity(arr.len());
    for item in arr {
        let lit = match item {
            Value::String(s) => cyc_parse(s)?,
            Value::Number(n) => {
                cyc_parse(&n.to_string()).map_err(|_| {
                    Error::MalformedDocument(format!("unsupported numeric literal {n}"))
                })?
            }
            other => {
                return Err(Error::MalformedDocument(format!(
                    "unsupported signature entry {other}"
                )))
            }
        };
        values.push(lit);
    }
    if values.is_empty() {
        return Err(Error::MalformedDocument("signature must be non-empty".into()));
    }
    Ok(SymSignature::new(values))
}

/// The theta graph: 2 vertices joined by 3 parallel edges.
pub fn theta_graph() -> EdgeLabeledGraph {
    EdgeLabeledGraph::new(2, vec![(0, 1), (0, 1), (0, 1)]).unwrap()
}

/// The complete graph K4.
pub fn k4_graph() -> EdgeLabeledGraph {
    EdgeLabeledGraph::new(4, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
}

/// The complete bipartite graph K3,3.
pub fn k33_graph() -> EdgeLabeledGraph {
    let mut edges = Vec::new();
    for u in 0..3 {
        for v in 3..6 {
            edges.push((u, v));
        }
    }
    EdgeLabeledGraph::new(6, edges).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_graph_documents() {
        let doc = r#"{"type":"graph","vertices":2,"edges":[[0,1],[0,1],[0,1]]}"#;
        match parse_instance(doc).unwrap() {
            Instance::Graph(g) => {
                assert_eq!(g, theta_graph());
                g.check_three_regular().unwrap();
            }
            _ => panic!("expected graph"),
        }
        let doc = r#"{"type":"graph","vertices":4,"edges":[[0,1],[0,2],[0,3],[1,2],[1,3],[2,3]]}"#;
        match parse_instance(doc).unwrap() {
            Instance::Graph(g) => {
                assert_eq!(g.vertex_count, 4);
                assert_eq!(g.edges.len(), 6);
            }
            _ => panic!("expected graph"),
        }
    }

    #[test]
    fn arity_mismatch_detected() {
        // A degree-3 generator labeled with an arity-2 signature.
        let doc = r#"{"type":"grid",
            "generators":[{"sig":["1","1","1"]}],
            "recognizers":[{"sig":["1","0","0","1"]}],
            "edges":[{"gen":[0,0],"rec":[0,0]},{"gen":[0,1],"rec":[0,1]},{"gen":[0,2],"rec":[0,2]}]}"#;
        assert!(matches!(
            parse_instance(doc),
            Err(Error::ArityMismatch { .. })
        ));
    }

    #[test]
    fn graph_to_grid_shapes() {
        let edge = SymSignature::from_ints(&[2, 1, 3]);
        let vertex = SymSignature::from_ints(&[1, 0, 0, 1]);
        let grid = graph_to_grid(&theta_graph(), &edge, &vertex).unwrap();
        assert_eq!(grid.generators.len(), 3);
        assert_eq!(grid.recognizers.len(), 2);
        assert_eq!(grid.edges.len(), 6);
        let grid = graph_to_grid(&k4_graph(), &edge, &vertex).unwrap();
        assert_eq!(grid.generators.len(), 6);
        assert_eq!(grid.recognizers.len(), 4);
        let bad = EdgeLabeledGraph::new(2, vec![(0, 1), (0, 1)]).unwrap();
        assert!(matches!(
            graph_to_grid(&bad, &edge, &vertex),
            Err(Error::NotThreeRegular { .. })
        ));
    }

    #[test]
    fn single_generator_tensor() {
        let gate = SignatureGrid {
            generators: vec![GenLabel::Sig(SymSignature::from_ints(&[5, 1, 7]))],
            recognizers: vec![],
            edges: vec![],
            dangling: vec![
                Dangling { side: Side::Gen, vertex: 0, port: 0 },
                Dangling { side: Side::Gen, vertex: 0, port: 1 },
            ],
        };
        let t = fgate_signature(&gate).unwrap();
        assert_eq!(t.at(0b00), &Cyc12::from_int(5));
        assert_eq!(t.at(0b01), &Cyc12::from_int(1));
        assert_eq!(t.at(0b10), &Cyc12::from_int(1));
        assert_eq!(t.at(0b11), &Cyc12::from_int(7));
        let sym = symmetric_project(&t).unwrap();
        assert_eq!(sym, SymSignature::from_ints(&[5, 1, 7]));
        // 0-input 2-output transfer matrix is the signature column.
        let m = transfer_matrix(&gate).unwrap();
        assert_eq!((m.rows, m.cols), (3, 1));
        assert_eq!(m.at(0, 0), &Cyc12::from_int(5));
        assert_eq!(m.at(1, 0), &Cyc12::from_int(1));
        assert_eq!(m.at(2, 0), &Cyc12::from_int(7));
    }

    #[test]
    fn equality_recognizer_tensor() {
        let gate = SignatureGrid {
            generators: vec![],
            recognizers: vec![SymSignature::from_ints(&[1, 0, 0, 1])],
            edges: vec![],
            dangling: (0..3)
                .map(|p| Dangling { side: Side::Rec, vertex: 0, port: p })
                .collect(),
        };
        let t = fgate_signature(&gate).unwrap();
        for bits in 0..8usize {
            let expected = if bits == 0 || bits == 7 { 1 } else { 0 };
            assert_eq!(t.at(bits), &Cyc12::from_int(expected));
        }
        assert_eq!(
            symmetric_project(&t).unwrap(),
            SymSignature::from_ints(&[1, 0, 0, 1])
        );
    }

    #[test]
    fn asymmetric_gate_detected() {
        // Recognizer [1,0,0,1] joined to generator [a,1,b] by one edge,
        // with dangling (rec,rec,gen); contraction is asymmetric.
        let a = Cyc12::from_int(2);
        let b = Cyc12::from_int(3);
        let gate = SignatureGrid {
            generators: vec![GenLabel::Sig(SymSignature::new(vec![
                a.clone(),
                Cyc12::one(),
                b.clone(),
            ]))],
            recognizers: vec![SymSignature::from_ints(&[1, 0, 0, 1])],
            edges: vec![GridEdge { gen: (0, 0), rec: (0, 0) }],
            dangling: vec![
                Dangling { side: Side::Rec, vertex: 0, port: 1 },
                Dangling { side: Side::Rec, vertex: 0, port: 2 },
                Dangling { side: Side::Gen, vertex: 0, port: 1 },
            ],
        };
        let t = fgate_signature(&gate).unwrap();
        assert_eq!(t.at(0b000), &a);
        assert_eq!(t.at(0b100), &Cyc12::one());
        assert_eq!(t.at(0b011), &Cyc12::one());
        assert_eq!(t.at(0b111), &b);
        assert_eq!(t.at(0b001), &Cyc12::zero());
        assert!(matches!(
            symmetric_project(&t),
            Err(Error::NotSymmetric { .. })
        ));
        // With a single output edge the transfer matrix still exists:
        // inputs enter only through weight-class sums.
        let m = transfer_matrix(&gate).unwrap();
        assert_eq!((m.rows, m.cols), (2, 3));
        assert_eq!(m.at(0, 0), &a);
        assert_eq!(m.at(1, 2), &b);
    }

    #[test]
    fn output_asymmetry_detected() {
        // Two unequal generators, one output port each: the gate does
        // not preserve symmetric signatures.
        let gate = SignatureGrid {
            generators: vec![
                GenLabel::Sig(SymSignature::from_ints(&[2, 1, 3])),
                GenLabel::Sig(SymSignature::from_ints(&[5, 1, 7])),
            ],
            recognizers: vec![SymSignature::from_ints(&[1, 0, 0, 1])],
            edges: vec![
                GridEdge { gen: (0, 1), rec: (0, 0) },
                GridEdge { gen: (1, 1), rec: (0, 1) },
            ],
            dangling: vec![
                Dangling { side: Side::Gen, vertex: 0, port: 0 },
                Dangling { side: Side::Gen, vertex: 1, port: 0 },
                Dangling { side: Side::Rec, vertex: 0, port: 2 },
            ],
        };
        assert!(matches!(
            transfer_matrix(&gate),
            Err(Error::NotSymmetric { .. })
        ));
    }
}
