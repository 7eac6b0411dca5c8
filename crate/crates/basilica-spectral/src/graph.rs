//! The self-similar graphs: Schreier graphs Γ_n on level-n binary words and
//! the two-boundary graphs G_n, with their Laplacian matrices under the
//! boundary-deletion masks, the decomposition of G_n into one copy of G_{n−1}
//! plus two of G_{n−2} glued at a single vertex u, and the reflection
//! automorphism Φ_n.

use crate::matrix::IntMatrix;
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub enum Marker {
    Interior,
    X,
    Y,
}

/// Vertex address: a binary word plus a boundary marker. Interior vertices of
/// a level-n graph carry words of length n; boundary vertices carry length
/// n−1 plus marker x or y.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub struct Address {
    pub word: Vec<u8>,
    pub marker: Marker,
}

impl Address {
    pub fn interior(word: Vec<u8>) -> Self {
        Address { word, marker: Marker::Interior }
    }

    pub fn boundary(word: Vec<u8>, marker: Marker) -> Self {
        debug_assert!(marker != Marker::Interior);
        Address { word, marker }
    }

    pub fn word_string(&self) -> String {
        self.word.iter().map(|b| char::from(b'0' + b)).collect()
    }
}

impl fmt::Display for Address {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.word_string())?;
        match self.marker {
            Marker::Interior => Ok(()),
            Marker::X => write!(f, "x"),
            Marker::Y => write!(f, "y"),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum EdgeLabel {
    A,
    B,
}

impl fmt::Display for EdgeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EdgeLabel::A => write!(f, "a"),
            EdgeLabel::B => write!(f, "b"),
        }
    }
}

/// Undirected labeled multigraph with loops. Vertices are kept sorted; edges
/// are stored once per unordered pair and label, with multiplicity.
#[derive(Clone, Debug)]
pub struct MultiGraph {
    pub vertices: Vec<Address>,
    /// (u_idx, v_idx, label) -> multiplicity, u_idx <= v_idx, u_idx != v_idx.
    pub edges: BTreeMap<(usize, usize, EdgeLabel), u32>,
    /// (vertex_idx, label) -> loop count.
    pub loops: BTreeMap<(usize, EdgeLabel), u32>,
    pub boundary: Vec<usize>,
}

impl MultiGraph {
    fn from_parts(
        mut vertices: Vec<Address>,
        edge_list: Vec<(Address, Address, EdgeLabel)>,
        loop_list: Vec<(Address, EdgeLabel)>,
        boundary: Vec<Address>,
    ) -> Self {
        vertices.sort();
        vertices.dedup();
        let index: BTreeMap<&Address, usize> =
            vertices.iter().enumerate().map(|(i, a)| (a, i)).collect();
        let mut edges: BTreeMap<(usize, usize, EdgeLabel), u32> = BTreeMap::new();
        for (u, v, l) in &edge_list {
            let (iu, iv) = (index[u], index[v]);
            assert_ne!(iu, iv, "loops must be added via loop_list");
            let key = (iu.min(iv), iu.max(iv), *l);
            *edges.entry(key).or_insert(0) += 1;
        }
        let mut loops: BTreeMap<(usize, EdgeLabel), u32> = BTreeMap::new();
        for (v, l) in &loop_list {
            *loops.entry((index[v], *l)).or_insert(0) += 1;
        }
        let boundary = boundary.iter().map(|a| index[a]).collect();
        MultiGraph { vertices, edges, loops, boundary }
    }

    pub fn vertex_index(&self, a: &Address) -> Option<usize> {
        self.vertices.binary_search(a).ok()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    /// Degree excluding loops.
    pub fn degree(&self, v: usize) -> u32 {
        self.edges
            .iter()
            .filter(|&(&(a, b, _), _)| a == v || b == v)
            .map(|(_, &m)| m)
            .sum()
    }

    pub fn neighbors(&self, v: usize) -> Vec<(usize, EdgeLabel, u32)> {
        self.edges
            .iter()
            .filter_map(|(&(a, b, l), &m)| {
                if a == v {
                    Some((b, l, m))
                } else if b == v {
                    Some((a, l, m))
                } else {
                    None
                }
            })
            .collect()
    }

    pub fn is_connected(&self) -> bool {
        if self.vertices.is_empty() {
            return true;
        }
        let mut seen = vec![false; self.vertices.len()];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for (w, _, _) in self.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}

// --- generator action of the two tree automorphisms on binary words ---

fn act_a(w: &[u8]) -> Vec<u8> {
    match w.split_first() {
        None => Vec::new(),
        Some((1, rest)) => {
            let mut out = vec![1];
            out.extend_from_slice(rest);
            out
        }
        Some((0, rest)) => {
            let mut out = vec![0];
            out.extend(act_b(rest));
            out
        }
        _ => unreachable!("binary words only"),
    }
}

fn act_b(w: &[u8]) -> Vec<u8> {
    match w.split_first() {
        None => Vec::new(),
        Some((1, rest)) => {
            let mut out = vec![0];
            out.extend_from_slice(rest);
            out
        }
        Some((0, rest)) => {
            let mut out = vec![1];
            out.extend(act_a(rest));
            out
        }
        _ => unreachable!("binary words only"),
    }
}

/// Schreier graph Γ_n: one edge per (vertex, generator) orbit step. A fixed
/// point contributes a loop; a mutual 2-cycle contributes a double edge.
pub fn build_gamma(n: usize) -> MultiGraph {
    assert!(n >= 1, "level must be at least 1");
    let mut verts = Vec::with_capacity(1 << n);
    for bits in 0..(1u64 << n) {
        let word: Vec<u8> = (0..n).map(|i| ((bits >> (n - 1 - i)) & 1) as u8).collect();
        verts.push(Address::interior(word));
    }
    let mut edge_list = Vec::new();
    let mut loop_list = Vec::new();
    for v in &verts {
        for (label, act) in [(EdgeLabel::A, act_a as fn(&[u8]) -> Vec<u8>), (EdgeLabel::B, act_b)] {
            let img = act(&v.word);
            if img == v.word {
                loop_list.push((v.clone(), label));
            } else {
                edge_list.push((v.clone(), Address::interior(img), label));
            }
        }
    }
    // One directed push per (vertex, generator); a pair {v, s(v)} with
    // s(s(v)) = v is pushed from both ends and accumulates multiplicity 2,
    // which is the correct double edge.
    MultiGraph::from_parts(verts, edge_list, loop_list, Vec::new())
}

/// Interior word sets I_0..I_n of the two-boundary graphs, built by the copy
/// recursion: I_m = I_{m−1}·1 ∪ I_{m−2}·00 ∪ I_{m−2}·01 ∪ {0^{m−1}1}.
/// |I_m| = V_m − 2 and the three unions are disjoint: a word of I_m lies in
/// exactly one copy (no word w has both w ∈ I_k and w·0 ∈ I_{k+1}).
pub fn interior_sets(n: usize) -> Vec<std::collections::BTreeSet<Vec<u8>>> {
    use std::collections::BTreeSet;
    let mut sets: Vec<BTreeSet<Vec<u8>>> = vec![BTreeSet::new(), [vec![1u8]].into()];
    for m in 2..=n {
        let mut s = BTreeSet::new();
        for w in &sets[m - 1] {
            let mut v = w.clone();
            v.push(1);
            s.insert(v);
        }
        for suffix in [[0u8, 0u8], [0u8, 1u8]] {
            for w in &sets[m - 2] {
                let mut v = w.clone();
                v.extend_from_slice(&suffix);
                s.insert(v);
            }
        }
        let mut glue = vec![0u8; m - 1];
        glue.push(1);
        s.insert(glue);
        sets.push(s);
    }
    sets.truncate(n + 1);
    sets
}

/// Two-boundary graph G_n.
///
/// For n ≥ 2 it is realized inside Γ_n: the induced subgraph on the interior
/// word set I_n, plus the two halves of the cut vertex 0^n attached as
/// boundary vertices 0^{n−1}x and 0^{n−1}y. For n ≥ 3 the cut vertex has one
/// edge to each boundary neighbor and x is the one whose word ends in 0; for
/// n = 2 it has a double edge to the single boundary neighbor, one strand per
/// boundary vertex.
pub fn build_g(n: usize) -> MultiGraph {
    match n {
        0 => {
            let x = Address::boundary(Vec::new(), Marker::X);
            let y = Address::boundary(Vec::new(), Marker::Y);
            MultiGraph::from_parts(
                vec![x.clone(), y.clone()],
                vec![(x.clone(), y.clone(), EdgeLabel::A)],
                Vec::new(),
                vec![x, y],
            )
        }
        1 => {
            let x = Address::boundary(Vec::new(), Marker::X);
            let y = Address::boundary(Vec::new(), Marker::Y);
            let u = Address::interior(vec![1]);
            MultiGraph::from_parts(
                vec![x.clone(), y.clone(), u.clone()],
                vec![
                    (x.clone(), u.clone(), EdgeLabel::B),
                    (y.clone(), u.clone(), EdgeLabel::B),
                ],
                vec![(u, EdgeLabel::A)],
                vec![x, y],
            )
        }
        _ => {
            let gamma = build_gamma(n);
            let zero_word = vec![0u8; n];
            let interior = interior_sets(n).pop().unwrap();
            let keep = |a: &Address| -> bool { interior.contains(&a.word) };
            let zero_idx = gamma
                .vertex_index(&Address::interior(zero_word.clone()))
                .expect("0^n present");
            let mut verts: Vec<Address> =
                gamma.vertices.iter().filter(|a| keep(a)).cloned().collect();
            let bx = Address::boundary(vec![0u8; n - 1], Marker::X);
            let by = Address::boundary(vec![0u8; n - 1], Marker::Y);
            verts.push(bx.clone());
            verts.push(by.clone());

            let mut edge_list = Vec::new();
            let mut loop_list = Vec::new();
            for (&(iu, iv, l), &m) in &gamma.edges {
                let (u, v) = (&gamma.vertices[iu], &gamma.vertices[iv]);
                if keep(u) && keep(v) {
                    for _ in 0..m {
                        edge_list.push((u.clone(), v.clone(), l));
                    }
                } else if iu == zero_idx && keep(v) {
                    attach_boundary(&mut edge_list, v, l, m, &bx, &by, n);
                } else if iv == zero_idx && keep(u) {
                    attach_boundary(&mut edge_list, u, l, m, &bx, &by, n);
                }
                // Edges between dropped vertices belong to the complementary
                // G_{n−1} part of Γ_n.
            }
            for (&(iv, l), &m) in &gamma.loops {
                let v = &gamma.vertices[iv];
                if keep(v) {
                    for _ in 0..m {
                        loop_list.push((v.clone(), l));
                    }
                }
            }
            MultiGraph::from_parts(verts, edge_list, loop_list, vec![bx, by])
        }
    }
}

/// Split the (multiplicity-m) edge from 0^n to `v` into boundary edges. For
/// n = 2 the double a-edge splits into one edge per boundary; for n ≥ 3 there
/// are two distinct neighbors, x attaching to the word ending in 0.
fn attach_boundary(
    edge_list: &mut Vec<(Address, Address, EdgeLabel)>,
    v: &Address,
    l: EdgeLabel,
    m: u32,
    bx: &Address,
    by: &Address,
    n: usize,
) {
    if n == 2 {
        assert_eq!(m, 2, "level-2 boundary edge is the split double edge");
        edge_list.push((bx.clone(), v.clone(), l));
        edge_list.push((by.clone(), v.clone(), l));
    } else {
        assert_eq!(m, 1, "level ≥ 3 boundary edges are simple");
        let b = if v.word[n - 1] == 0 { bx } else { by };
        edge_list.push((b.clone(), v.clone(), l));
    }
}

pub fn vertex_count_formula(n: usize) -> u64 {
    let sign: i64 = if n % 2 == 0 { -1 } else { 1 };
    ((1u64 << (n + 2)) as i64 + sign + 9) as u64 / 6
}

// --- Laplacian masks ---

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum LaplacianMask {
    /// Neumann: no deletion.
    A,
    /// One boundary vertex (x) deleted.
    B,
    /// Dirichlet: both boundary vertices deleted.
    C,
    /// Dirichlet plus the neighbor of the y boundary.
    D,
    /// The y boundary plus its neighbor.
    E,
}

#[derive(Debug, thiserror::Error)]
pub enum GraphError {
    #[error("mask {mask:?} requires a graph with two boundary vertices")]
    NoBoundary { mask: LaplacianMask },
    #[error("mask {mask:?} requires level ≥ 1 structure (boundary with interior neighbor)")]
    TooSmall { mask: LaplacianMask },
}

/// Laplacian under a deletion mask. Loops contribute nothing; deleting a
/// vertex removes its row and column but leaves the neighbors' diagonal
/// entries unchanged. Returns the matrix and the retained vertex indices
/// (in canonical order).
pub fn laplacian(g: &MultiGraph, mask: LaplacianMask) -> Result<(IntMatrix, Vec<usize>), GraphError> {
    let deleted: Vec<usize> = match mask {
        LaplacianMask::A => Vec::new(),
        _ => {
            if g.boundary.len() != 2 {
                return Err(GraphError::NoBoundary { mask });
            }
            let bx = *g
                .boundary
                .iter()
                .find(|&&i| g.vertices[i].marker == Marker::X)
                .expect("x boundary");
            let by = *g
                .boundary
                .iter()
                .find(|&&i| g.vertices[i].marker == Marker::Y)
                .expect("y boundary");
            let nbr_y = || -> Result<usize, GraphError> {
                let nb = g.neighbors(by);
                if nb.len() != 1 {
                    return Err(GraphError::TooSmall { mask });
                }
                Ok(nb[0].0)
            };
            match mask {
                LaplacianMask::B => vec![bx],
                LaplacianMask::C => vec![bx, by],
                LaplacianMask::D => {
                    let ny = nbr_y()?;
                    if ny == bx {
                        return Err(GraphError::TooSmall { mask });
                    }
                    vec![bx, by, ny]
                }
                LaplacianMask::E => {
                    let ny = nbr_y()?;
                    if ny == bx {
                        return Err(GraphError::TooSmall { mask });
                    }
                    vec![by, ny]
                }
                LaplacianMask::A => unreachable!(),
            }
        }
    };
    let retained: Vec<usize> =
        (0..g.vertices.len()).filter(|i| !deleted.contains(i)).collect();
    let pos: BTreeMap<usize, usize> =
        retained.iter().enumerate().map(|(p, &i)| (i, p)).collect();
    let mut m = IntMatrix::zeros(retained.len());
    for (&(iu, iv, _), &mult) in &g.edges {
        // Diagonal counts every incident non-loop edge, even toward deleted
        // vertices; off-diagonal only between retained pairs.
        if let Some(&pu) = pos.get(&iu) {
            m.add_to(pu, pu, mult as i64);
        }
        if let Some(&pv) = pos.get(&iv) {
            m.add_to(pv, pv, mult as i64);
        }
        if let (Some(&pu), Some(&pv)) = (pos.get(&iu), pos.get(&iv)) {
            m.add_to(pu, pv, -(mult as i64));
            m.add_to(pv, pu, -(mult as i64));
        }
    }
    Ok((m, retained))
}

// --- decomposition and reflection ---

/// Gluing vertex u of G_n: the image of both boundary vertices of the G_{n−1}
/// copy, with address 0^{n−2}·01.
pub fn glue_vertex(n: usize) -> Address {
    assert!(n >= 2);
    let mut w = vec![0u8; n - 1];
    w.push(1);
    Address::interior(w)
}

/// Embedding of G_{n−1} into G_n: append 1 to interior words, both boundary
/// vertices to u.
pub fn embed_prev(n: usize, a: &Address) -> Address {
    match a.marker {
        Marker::Interior => {
            let mut w = a.word.clone();
            w.push(1);
            Address::interior(w)
        }
        _ => glue_vertex(n),
    }
}

/// First embedding of G_{n−2} into G_n: append 00 to interior words,
/// x ↦ x-boundary of G_n, y ↦ u.
pub fn embed_2a(n: usize, a: &Address) -> Address {
    match a.marker {
        Marker::Interior => {
            let mut w = a.word.clone();
            w.extend_from_slice(&[0, 0]);
            Address::interior(w)
        }
        Marker::X => Address::boundary(vec![0u8; n - 1], Marker::X),
        Marker::Y => glue_vertex(n),
    }
}

/// Second embedding of G_{n−2} into G_n: append 01 to interior words,
/// x ↦ u, y ↦ y-boundary of G_n.
pub fn embed_2b(n: usize, a: &Address) -> Address {
    match a.marker {
        Marker::Interior => {
            let mut w = a.word.clone();
            w.extend_from_slice(&[0, 1]);
            Address::interior(w)
        }
        Marker::X => glue_vertex(n),
        Marker::Y => Address::boundary(vec![0u8; n - 1], Marker::Y),
    }
}

pub struct Decomposition {
    pub prev: MultiGraph,
    pub small: MultiGraph,
    pub glue: Address,
    /// Pairs (source vertex in the sub-copy, image in G_n) for each of the
    /// three embeddings: G_{n−1}, first G_{n−2} copy, second G_{n−2} copy.
    pub map_prev: Vec<(Address, Address)>,
    pub map_2a: Vec<(Address, Address)>,
    pub map_2b: Vec<(Address, Address)>,
}

pub fn decompose_g(n: usize) -> Decomposition {
    assert!(n >= 2, "decomposition requires level ≥ 2");
    let prev = build_g(n - 1);
    let small = build_g(n - 2);
    let map_prev =
        prev.vertices.iter().map(|a| (a.clone(), embed_prev(n, a))).collect();
    let map_2a =
        small.vertices.iter().map(|a| (a.clone(), embed_2a(n, a))).collect();
    let map_2b =
        small.vertices.iter().map(|a| (a.clone(), embed_2b(n, a))).collect();
    Decomposition { prev, small, glue: glue_vertex(n), map_prev, map_2a, map_2b }
}

/// The reflection Φ_n of G_n: the involutive automorphism exchanging the two
/// G_{n−2} copies and acting recursively on the G_{n−1} copy. Returned as the
/// full vertex permutation (pairs source ↦ image).
pub fn reflection(n: usize) -> Vec<(Address, Address)> {
    assert!(n >= 2, "reflection requires level ≥ 2");
    boundary_swap(n)
}

/// Boundary-swapping automorphism σ_n of G_n, defined for every n ≥ 0; for
/// n ≥ 2 it coincides with the reflection Φ_n. Returned as vertex pairs in
/// canonical order.
pub fn boundary_swap(n: usize) -> Vec<(Address, Address)> {
    let g = build_g(n);
    let sets = interior_sets(n);
    g.vertices.iter().map(|a| (a.clone(), reflect_address(n, a, &sets))).collect()
}

/// Boundary-swapping automorphism σ_n of G_n for any n ≥ 0; for n ≥ 2 this is
/// the reflection Φ_n (which swaps the two boundary vertices since each lives
/// in one of the exchanged copies). Copy membership of an interior word is by
/// prefix lookup in the interior sets; the three cases are mutually exclusive.
fn reflect_address(
    n: usize,
    a: &Address,
    sets: &[std::collections::BTreeSet<Vec<u8>>],
) -> Address {
    match a.marker {
        Marker::X => {
            return Address::boundary(a.word.clone(), Marker::Y);
        }
        Marker::Y => {
            return Address::boundary(a.word.clone(), Marker::X);
        }
        Marker::Interior => {}
    }
    if n < 2 {
        return a.clone(); // G_1's single interior vertex is fixed
    }
    let w = &a.word;
    if w == &glue_vertex(n).word {
        return a.clone();
    }
    if w[n - 1] == 1 && sets[n - 1].contains(&w[..n - 1]) {
        // G_{n−1} copy: strip the trailing 1, recurse, re-append.
        let inner = Address::interior(w[..n - 1].to_vec());
        let mut img = reflect_address(n - 1, &inner, sets).word;
        img.push(1);
        return Address::interior(img);
    }
    assert!(n >= 2 && sets[n - 2].contains(&w[..n - 2]), "address outside all copies: {}", a);
    let inner = Address::interior(w[..n - 2].to_vec());
    let mut img = reflect_address(n - 2, &inner, sets).word;
    // The two small copies are exchanged, through σ_{n−2}.
    match w[n - 2..] {
        [0, 0] => img.extend_from_slice(&[0, 1]),
        [0, 1] => img.extend_from_slice(&[0, 0]),
        _ => unreachable!("small-copy suffix"),
    }
    Address::interior(img)
}

// --- export ---

pub fn to_dot(g: &MultiGraph) -> String {
    let mut out = String::from("graph {\n");
    for (i, v) in g.vertices.iter().enumerate() {
        let shape = if g.boundary.contains(&i) { ", shape=square" } else { "" };
        out.push_str(&format!("  v{} [label=\"{}\"{}];\n", i, v, shape));
    }
    for (&(u, v, l), &m) in &g.edges {
        for _ in 0..m {
            out.push_str(&format!("  v{} -- v{} [label=\"{}\"];\n", u, v, l));
        }
    }
    for (&(v, l), &m) in &g.loops {
        for _ in 0..m {
            out.push_str(&format!("  v{} -- v{} [label=\"{}\"];\n", v, v, l));
        }
    }
    out.push_str("}\n");
    out
}

/// Check that the edge multiset of G_n is exactly the union of the images of
/// the three embedded copies. Generator labels are ignored in the comparison:
/// the boundary edges of a copy change letter between levels.
pub fn decomposition_consistent(n: usize) -> bool {
    let g = build_g(n);
    let d = decompose_g(n);
    let mut expected: BTreeMap<(usize, usize), u32> = BTreeMap::new();
    for (sub, map) in [
        (&d.prev, &d.map_prev),
        (&d.small, &d.map_2a),
        (&d.small, &d.map_2b),
    ] {
        let lookup: BTreeMap<&Address, &Address> =
            map.iter().map(|(s, t)| (s, t)).collect();
        for (&(iu, iv, _), &m) in &sub.edges {
            let tu = g.vertex_index(lookup[&sub.vertices[iu]]).unwrap();
            let tv = g.vertex_index(lookup[&sub.vertices[iv]]).unwrap();
            assert_ne!(tu, tv, "embedding must not collapse an edge");
            *expected.entry((tu.min(tv), tu.max(tv))).or_insert(0) += m;
        }
        // Loops map to loops; multiplicities checked below.
    }
    let mut actual: BTreeMap<(usize, usize), u32> = BTreeMap::new();
    for (&(u, v, _), &m) in &g.edges {
        *actual.entry((u, v)).or_insert(0) += m;
    }
    if expected != actual {
        return false;
    }
    // Loop check: loops of G_n = embedded loops of the copies.
    let mut exp_loops: BTreeMap<usize, u32> = BTreeMap::new();
    for (sub, map) in [
        (&d.prev, &d.map_prev),
        (&d.small, &d.map_2a),
        (&d.small, &d.map_2b),
    ] {
        let lookup: BTreeMap<&Address, &Address> =
            map.iter().map(|(s, t)| (s, t)).collect();
        for (&(iv, _), &m) in &sub.loops {
            let tv = g.vertex_index(lookup[&sub.vertices[iv]]).unwrap();
            *exp_loops.entry(tv).or_insert(0) += m;
        }
    }
    let mut act_loops: BTreeMap<usize, u32> = BTreeMap::new();
    for (&(v, _), &m) in &g.loops {
        *act_loops.entry(v).or_insert(0) += m;
    }
    exp_loops == act_loops
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_vertex_and_degree() {
        for n in 1..=8 {
            let g = build_gamma(n);
            assert_eq!(g.vertex_count(), 1 << n);
            // Every vertex has total degree 4 counting loops twice.
            for v in 0..g.vertex_count() {
                let loops: u32 = g
                    .loops
                    .iter()
                    .filter(|&(&(w, _), _)| w == v)
                    .map(|(_, &m)| m)
                    .sum();
                assert_eq!(g.degree(v) + 2 * loops, 4, "level {} vertex {}", n, g.vertices[v]);
            }
            assert!(g.is_connected());
        }
    }

    #[test]
    fn g_vertex_counts_match_formula() {
        assert_eq!(
            (0..=10).map(vertex_count_formula).collect::<Vec<_>>(),
            vec![2, 3, 4, 7, 12, 23, 44, 87, 172, 343, 684],
        );
        for n in 0..=9 {
            let g = build_g(n);
            assert_eq!(g.vertex_count() as u64, vertex_count_formula(n), "level {}", n);
            assert!(g.is_connected(), "level {}", n);
        }
    }

    #[test]
    fn g3_structure() {
        let g = build_g(3);
        let words: Vec<String> = g
            .vertices
            .iter()
            .filter(|a| a.marker == Marker::Interior)
            .map(|a| a.word_string())
            .collect();
        assert_eq!(words, vec!["001", "011", "100", "101", "111"]);
        // Boundary vertices have degree 1; x attaches to the word ending 0.
        for &b in &g.boundary {
            assert_eq!(g.degree(b), 1);
        }
        let bx = g.vertex_index(&Address::boundary(vec![0, 0], Marker::X)).unwrap();
        let (nbr, _, _) = g.neighbors(bx)[0];
        assert_eq!(g.vertices[nbr].word_string(), "100");
    }

    #[test]
    fn interior_set_sizes() {
        let sets = interior_sets(12);
        for (m, s) in sets.iter().enumerate() {
            assert_eq!(s.len() as u64 + 2, vertex_count_formula(m), "level {}", m);
        }
    }

    #[test]
    fn decomposition_and_reflection() {
        for n in 2..=9 {
            assert!(decomposition_consistent(n), "decomposition at level {}", n);
            assert!(reflection_is_automorphism(n), "reflection at level {}", n);
        }
    }

    #[test]
    fn laplacian_small_cases() {
        // G_1 with both boundaries and the interior's neighborhood deleted
        // leaves nothing; with y and its neighbor deleted leaves x, whose
        // diagonal keeps the degree toward the deleted vertex.
        let g = build_g(1);
        let (d, _) = laplacian(&g, LaplacianMask::D).unwrap();
        assert_eq!(d.n, 0);
        let (e, kept) = laplacian(&g, LaplacianMask::E).unwrap();
        assert_eq!(e.n, 1);
        assert_eq!(g.vertices[kept[0]].marker, Marker::X);
        assert_eq!(e.get(0, 0).to_i64().unwrap(), 1);
        // G_0 is too small for the neighbor-deleting masks.
        let g0 = build_g(0);
        assert!(laplacian(&g0, LaplacianMask::D).is_err());
        assert!(laplacian(&g0, LaplacianMask::E).is_err());
    }
}

/// Check that the reflection map is a label-preserving automorphism of G_n
/// exchanging the two boundary vertices.
pub fn reflection_is_automorphism(n: usize) -> bool {
    let g = build_g(n);
    let map = reflection(n);
    let perm: BTreeMap<usize, usize> = map
        .iter()
        .map(|(s, t)| (g.vertex_index(s).unwrap(), g.vertex_index(t).unwrap()))
        .collect();
    if perm.len() != g.vertices.len() {
        return false;
    }
    // Involution.
    if !perm.iter().all(|(&v, &w)| perm[&w] == v) {
        return false;
    }
    let mapped_edges: BTreeMap<(usize, usize, EdgeLabel), u32> = g
        .edges
        .iter()
        .map(|(&(u, v, l), &m)| {
            let (pu, pv) = (perm[&u], perm[&v]);
            ((pu.min(pv), pu.max(pv), l), m)
        })
        .collect();
    let mapped_loops: BTreeMap<(usize, EdgeLabel), u32> =
        g.loops.iter().map(|(&(v, l), &m)| ((perm[&v], l), m)).collect();
    mapped_edges == g.edges && mapped_loops == g.loops
}

pub fn to_json(g: &MultiGraph) -> serde_json::Value {
    serde_json::json!({
        "vertices": g.vertices.iter().map(|v| serde_json::json!({
            "word": v.word_string(),
            "marker": match v.marker {
                Marker::Interior => "interior",
                Marker::X => "x",
                Marker::Y => "y",
            },
        })).collect::<Vec<_>>(),
        "edges": g.edges.iter().map(|(&(u, v, l), &m)| serde_json::json!({
            "u": g.vertices[u].to_string(),
            "v": g.vertices[v].to_string(),
            "label": l.to_string(),
            "mult": m,
        })).collect::<Vec<_>>(),
        "loops": g.loops.iter().map(|(&(v, l), &m)| serde_json::json!({
            "v": g.vertices[v].to_string(),
            "label": l.to_string(),
            "mult": m,
        })).collect::<Vec<_>>(),
        "boundary": g.boundary.iter().map(|&i| g.vertices[i].to_string()).collect::<Vec<_>>(),
    })
}
