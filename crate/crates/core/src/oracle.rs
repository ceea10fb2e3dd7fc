//! Brute-force ground truth, independent of the series formulas:
//! enumerate elements and conjugacy classes of a graph product by
//! rewriting words to shortlex normal form and closing conjugacy classes
//! under length-preserving operations.

use crate::graph::{GraphSpec, GroupKind, VertexSubset};
use std::collections::{HashMap, HashSet, VecDeque};
use thiserror::Error;

pub const DEFAULT_CLOSURE_BUDGET: usize = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("vertex group `{0}` cannot be enumerated (custom series kind)")]
    UnsupportedVertexGroup(String),
    #[error("conjugacy closure exceeded the state budget of {0}")]
    ClosureBudgetExceeded(usize),
}

/// One maximal vertex-group chunk of a word: a residue mod m for a
/// finite cyclic group, a nonzero exponent for an infinite cyclic group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Syllable {
    pub vertex: usize,
    pub elem: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GroupWord(pub Vec<Syllable>);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Flavor {
    ShortlexNormal,
    ConjugacyCanonical,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalForm {
    pub word: GroupWord,
    pub flavor: Flavor,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GeodesicFlags {
    pub geodesic: bool,
    pub cyclically_geodesic: bool,
    pub conjugacy_geodesic: bool,
}

/// Shortlex-compatible vertex ordering: `rank[v]` is the position of
/// vertex v. Within a vertex group the generator precedes its inverse.
#[derive(Clone, Debug)]
pub struct VertexOrder {
    rank: Vec<usize>,
}

impl VertexOrder {
    pub fn declaration(n: usize) -> Self {
        VertexOrder { rank: (0..n).collect() }
    }

    /// Ordering that puts the given vertices first (in declaration
    /// order), then the rest. This is the reorder rule needed for
    /// transversal enumeration: link-of-pivot vertices come first.
    pub fn with_first(n: usize, first: VertexSubset) -> Self {
        let mut rank = vec![0usize; n];
        let mut next = 0;
        for v in 0..n {
            if first.contains(v) {
                rank[v] = next;
                next += 1;
            }
        }
        for v in 0..n {
            if !first.contains(v) {
                rank[v] = next;
                next += 1;
            }
        }
        VertexOrder { rank }
    }

    fn rank(&self, v: usize) -> usize {
        self.rank[v]
    }
}

fn vertex_order_m(kind: &GroupKind) -> Option<i64> {
    match kind {
        GroupKind::Cyclic(m) => Some(*m as i64),
        GroupKind::InfiniteCyclic => None,
        GroupKind::Custom { .. } => None,
    }
}

fn syllable_len(g: &GraphSpec, s: &Syllable) -> usize {
    match vertex_order_m(&g.vertex(s.vertex).group) {
        Some(m) => s.elem.min(m - s.elem) as usize,
        None => s.elem.unsigned_abs() as usize,
    }
}

/// Compose two elements of the same vertex group; 0 is the identity.
fn compose(g: &GraphSpec, vertex: usize, a: i64, b: i64) -> i64 {
    match vertex_order_m(&g.vertex(vertex).group) {
        Some(m) => (a + b).rem_euclid(m),
        None => a + b,
    }
}

fn inverse_elem(g: &GraphSpec, vertex: usize, a: i64) -> i64 {
    match vertex_order_m(&g.vertex(vertex).group) {
        Some(m) => (m - a).rem_euclid(m),
        None => -a,
    }
}

/// A single generator letter: the vertex and +1 for the generator or -1
/// for its inverse.
pub type Letter = (usize, i8);

/// Generator letters of X-length 1 for a vertex group.
pub fn generator_letters(g: &GraphSpec, v: usize) -> Result<Vec<i64>, OracleError> {
    match &g.vertex(v).group {
        GroupKind::Cyclic(2) => Ok(vec![1]),
        GroupKind::Cyclic(m) => Ok(vec![1, *m as i64 - 1]),
        GroupKind::InfiniteCyclic => Ok(vec![1, -1]),
        GroupKind::Custom { .. } => {
            Err(OracleError::UnsupportedVertexGroup(g.vertex(v).name.clone()))
        }
    }
}

impl GroupWord {
    pub fn empty() -> Self {
        GroupWord(Vec::new())
    }

    /// Build from a raw syllable list, merging adjacent same-vertex
    /// syllables and dropping identities.
    pub fn from_syllables(g: &GraphSpec, syllables: &[Syllable]) -> Self {
        let mut out: Vec<Syllable> = Vec::with_capacity(syllables.len());
        for s in syllables {
            let elem = match vertex_order_m(&g.vertex(s.vertex).group) {
                Some(m) => s.elem.rem_euclid(m),
                None => s.elem,
            };
            if elem == 0 {
                continue;
            }
            match out.last_mut() {
                Some(last) if last.vertex == s.vertex => {
                    let merged = compose(g, s.vertex, last.elem, elem);
                    if merged == 0 {
                        out.pop();
                    } else {
                        last.elem = merged;
                    }
                }
                _ => out.push(Syllable { vertex: s.vertex, elem }),
            }
        }
        GroupWord(out)
    }

    pub fn from_letters(g: &GraphSpec, letters: &[Letter]) -> Self {
        let syllables: Vec<Syllable> = letters
            .iter()
            .map(|&(v, sign)| Syllable { vertex: v, elem: sign as i64 })
            .collect();
        GroupWord::from_syllables(g, &syllables)
    }

    pub fn x_length(&self, g: &GraphSpec) -> usize {
        self.0.iter().map(|s| syllable_len(g, s)).sum()
    }

    pub fn support(&self) -> VertexSubset {
        let mut s = VertexSubset::EMPTY;
        for syl in &self.0 {
            s = s.insert(syl.vertex);
        }
        s
    }

    pub fn inverse(&self, g: &GraphSpec) -> GroupWord {
        GroupWord(
            self.0
                .iter()
                .rev()
                .map(|s| Syllable { vertex: s.vertex, elem: inverse_elem(g, s.vertex, s.elem) })
                .collect(),
        )
    }

    pub fn concat(&self, other: &GroupWord, g: &GraphSpec) -> GroupWord {
        let mut syl = self.0.clone();
        syl.extend_from_slice(&other.0);
        GroupWord::from_syllables(g, &syl)
    }

    /// Geodesic letter expansion: each syllable written as its
    /// vertex-group shortlex normal form over the letters.
    pub fn letters(&self, g: &GraphSpec) -> Vec<Letter> {
        let mut out = Vec::new();
        for s in &self.0 {
            match vertex_order_m(&g.vertex(s.vertex).group) {
                Some(m) => {
                    let r = s.elem;
                    if r <= m - r {
                        out.extend(std::iter::repeat((s.vertex, 1i8)).take(r as usize));
                    } else {
                        out.extend(std::iter::repeat((s.vertex, -1i8)).take((m - r) as usize));
                    }
                }
                None => {
                    let sign: i8 = if s.elem > 0 { 1 } else { -1 };
                    out.extend(
                        std::iter::repeat((s.vertex, sign)).take(s.elem.unsigned_abs() as usize),
                    );
                }
            }
        }
        out
    }
}

fn letter_key(order: &VertexOrder, l: Letter) -> (usize, u8) {
    (order.rank(l.0), if l.1 > 0 { 0 } else { 1 })
}

fn compare_words(g: &GraphSpec, order: &VertexOrder, a: &GroupWord, b: &GroupWord) -> std::cmp::Ordering {
    let la: Vec<_> = a.letters(g).into_iter().map(|l| letter_key(order, l)).collect();
    let lb: Vec<_> = b.letters(g).into_iter().map(|l| letter_key(order, l)).collect();
    la.len().cmp(&lb.len()).then_with(|| la.cmp(&lb))
}

/// Merge syllables to exhaustion: any pair of same-vertex syllables
/// separated only by commuting syllables is combined (and dropped when
/// they cancel). The result is a reduced word of minimal X-length.
fn reduce(g: &GraphSpec, word: &GroupWord) -> GroupWord {
    let mut w = GroupWord::from_syllables(g, &word.0).0;
    'outer: loop {
        for i in 0..w.len() {
            let v = w[i].vertex;
            for j in i + 1..w.len() {
                if w[j].vertex == v {
                    let merged = compose(g, v, w[i].elem, w[j].elem);
                    w.remove(j);
                    if merged == 0 {
                        w.remove(i);
                    } else {
                        w[i].elem = merged;
                    }
                    continue 'outer;
                }
                if !g.adjacent(w[j].vertex, v) {
                    break;
                }
            }
        }
        return GroupWord(w);
    }
}

/// All words reachable from a reduced word by swapping adjacent
/// commuting syllables.
fn shuffle_orbit(g: &GraphSpec, word: &GroupWord) -> Vec<GroupWord> {
    let mut seen: HashSet<GroupWord> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(word.clone());
    queue.push_back(word.clone());
    while let Some(w) = queue.pop_front() {
        for i in 0..w.0.len().saturating_sub(1) {
            let (a, b) = (w.0[i], w.0[i + 1]);
            if g.adjacent(a.vertex, b.vertex) {
                let mut next = w.clone();
                next.0.swap(i, i + 1);
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
    }
    seen.into_iter().collect()
}

/// Shortlex normal form: reduce, then take the lexicographic minimum of
/// the shuffle orbit under the letter order induced by the vertex order.
pub fn shortlex_normalize(g: &GraphSpec, word: &GroupWord, order: &VertexOrder) -> CanonicalForm {
    let reduced = reduce(g, word);
    let best = shuffle_orbit(g, &reduced)
        .into_iter()
        .min_by(|a, b| compare_words(g, order, a, b))
        .unwrap_or_else(GroupWord::empty);
    CanonicalForm { word: best, flavor: Flavor::ShortlexNormal }
}

// ---- geodesic characterization ----

#[derive(Clone, Copy, PartialEq, Eq)]
enum ProjTok {
    Letter(i8),
    Dollar,
}

/// Projection onto one vertex group: keep X_v letters, map letters of
/// non-neighbours to $, delete letters of neighbours.
fn project(g: &GraphSpec, letters: &[Letter], v: usize) -> Vec<ProjTok> {
    let mut out = Vec::new();
    for &(u, sign) in letters {
        if u == v {
            out.push(ProjTok::Letter(sign));
        } else if !g.adjacent(u, v) {
            out.push(ProjTok::Dollar);
        }
    }
    out
}

/// Is a block of same-vertex letters a geodesic word in G_v?
fn block_geodesic(g: &GraphSpec, v: usize, block: &[i8]) -> bool {
    if block.is_empty() {
        return true;
    }
    let sign = block[0];
    if block.iter().any(|&s| s != sign) {
        return false;
    }
    match vertex_order_m(&g.vertex(v).group) {
        Some(m) => 2 * block.len() as i64 <= m,
        None => true,
    }
}

fn projection_geodesic(g: &GraphSpec, v: usize, proj: &[ProjTok]) -> bool {
    let mut block = Vec::new();
    for tok in proj {
        match tok {
            ProjTok::Letter(s) => block.push(*s),
            ProjTok::Dollar => {
                if !block_geodesic(g, v, &block) {
                    return false;
                }
                block.clear();
            }
        }
    }
    block_geodesic(g, v, &block)
}

/// Cyclic version: blocks between consecutive $ symbols, wrapping around.
fn projection_cyclic_blocks_geodesic(g: &GraphSpec, v: usize, proj: &[ProjTok]) -> bool {
    let first_dollar = proj.iter().position(|t| *t == ProjTok::Dollar);
    let start = match first_dollar {
        Some(i) => i,
        None => return projection_geodesic(g, v, proj),
    };
    let mut block = Vec::new();
    for idx in 1..=proj.len() {
        match proj[(start + idx) % proj.len()] {
            ProjTok::Letter(s) => block.push(s),
            ProjTok::Dollar => {
                if !block_geodesic(g, v, &block) {
                    return false;
                }
                block.clear();
            }
        }
    }
    block_geodesic(g, v, &block)
}

fn letters_geodesic(g: &GraphSpec, letters: &[Letter]) -> bool {
    (0..g.vertex_count()).all(|v| projection_geodesic(g, v, &project(g, letters, v)))
}

/// Language-level geodesic tests via the per-vertex projections.
pub fn geodesic_test(g: &GraphSpec, word: &GroupWord) -> GeodesicFlags {
    let letters = word.letters(g);
    let geodesic = letters_geodesic(g, &letters);
    let cyclically_geodesic = (0..letters.len().max(1)).all(|r| {
        let rotated: Vec<Letter> =
            letters[r..].iter().chain(letters[..r].iter()).copied().collect();
        letters_geodesic(g, &rotated)
    });
    // Conjugacy geodesics: each projection lies in ConjGeo(G_v) (no $,
    // and for the abelian vertex groups here conjugacy is trivial, so
    // ConjGeo = Geo) or is a cyclic permutation of ($ Geo(G_v))+.
    let conjugacy_geodesic = (0..g.vertex_count()).all(|v| {
        projection_cyclic_blocks_geodesic(g, v, &project(g, &letters, v))
    });
    GeodesicFlags { geodesic, cyclically_geodesic, conjugacy_geodesic }
}

// ---- conjugacy canonicalization ----

/// Vertex-group conjugates of a syllable element of the same X-length.
/// All supported enumerable vertex groups are abelian, so this is the
/// identity; a nonabelian finite vertex group (multiplication table)
/// would plug in here.
fn vertex_conjugates(_g: &GraphSpec, s: Syllable) -> Vec<i64> {
    vec![s.elem]
}

/// Canonical conjugacy representative: cyclically reduce, then take the
/// lexicographic minimum of the closure under shuffles, whole-syllable
/// cyclic permutations, and conjugate replacements.
pub fn conjugacy_canonicalize(
    g: &GraphSpec,
    word: &GroupWord,
    order: &VertexOrder,
    budget: usize,
) -> Result<CanonicalForm, OracleError> {
    let mut cur = shortlex_normalize(g, word, order).word;
    'restart: loop {
        let cur_len = cur.x_length(g);
        if cur.0.is_empty() {
            return Ok(CanonicalForm { word: cur, flavor: Flavor::ConjugacyCanonical });
        }
        let mut seen: HashSet<GroupWord> = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(cur.clone());
        queue.push_back(cur.clone());
        while let Some(state) = queue.pop_front() {
            for variant in shuffle_orbit(g, &state) {
                if variant.0.is_empty() {
                    continue;
                }
                let mut neighbors: Vec<GroupWord> = Vec::new();
                // cyclic permutation of the leading syllable
                let mut rotated = variant.0[1..].to_vec();
                rotated.push(variant.0[0]);
                neighbors.push(GroupWord(rotated));
                // conjugate replacement hook (identity for abelian kinds)
                for (i, &syl) in variant.0.iter().enumerate() {
                    let rest_support = VertexSubset(
                        variant.support().0 & !VertexSubset::singleton(syl.vertex).0,
                    );
                    if !rest_support.is_subset_of(g.neighbours(syl.vertex)) {
                        continue;
                    }
                    for conj in vertex_conjugates(g, syl) {
                        if conj != syl.elem {
                            let mut replaced = variant.0.clone();
                            replaced[i].elem = conj;
                            neighbors.push(GroupWord(replaced));
                        }
                    }
                }
                for cand in neighbors {
                    let nf = shortlex_normalize(g, &cand, order).word;
                    if nf.x_length(g) < cur_len {
                        cur = nf;
                        continue 'restart;
                    }
                    if seen.insert(nf.clone()) {
                        if seen.len() > budget {
                            return Err(OracleError::ClosureBudgetExceeded(budget));
                        }
                        queue.push_back(nf);
                    }
                }
            }
        }
        let best = seen
            .into_iter()
            .min_by(|a, b| compare_words(g, order, a, b))
            .expect("closure is nonempty");
        return Ok(CanonicalForm { word: best, flavor: Flavor::ConjugacyCanonical });
    }
}

// ---- enumeration ----

/// All shortlex normal forms of X-length at most n, mapped to their length.
pub fn ball_map(
    g: &GraphSpec,
    n: usize,
    order: &VertexOrder,
) -> Result<HashMap<GroupWord, usize>, OracleError> {
    let mut gens: Vec<Syllable> = Vec::new();
    for v in 0..g.vertex_count() {
        for e in generator_letters(g, v)? {
            gens.push(Syllable { vertex: v, elem: e });
        }
    }
    let mut map: HashMap<GroupWord, usize> = HashMap::new();
    map.insert(GroupWord::empty(), 0);
    let mut frontier = vec![GroupWord::empty()];
    for len in 0..n {
        let mut next = Vec::new();
        for w in &frontier {
            for gen in &gens {
                let mut syl = w.0.clone();
                syl.push(*gen);
                let nf = shortlex_normalize(g, &GroupWord(syl), order).word;
                let l = nf.x_length(g);
                if l == len + 1 && !map.contains_key(&nf) {
                    map.insert(nf.clone(), l);
                    next.push(nf);
                }
            }
        }
        frontier = next;
    }
    Ok(map)
}

/// Sphere sizes |S(k)| for k = 0..n by breadth-first closure.
pub fn enumerate_ball(g: &GraphSpec, n: usize) -> Result<Vec<u64>, OracleError> {
    let order = VertexOrder::declaration(g.vertex_count());
    let map = ball_map(g, n, &order)?;
    let mut counts = vec![0u64; n + 1];
    for (_, &l) in &map {
        counts[l] += 1;
    }
    Ok(counts)
}

/// Number of conjugacy classes whose shortest elements have length k,
/// for k = 0..n.
pub fn enumerate_conjugacy(g: &GraphSpec, n: usize, budget: usize) -> Result<Vec<u64>, OracleError> {
    let order = VertexOrder::declaration(g.vertex_count());
    let map = ball_map(g, n, &order)?;
    let mut classes: HashSet<GroupWord> = HashSet::new();
    for w in map.keys() {
        classes.insert(conjugacy_canonicalize(g, w, &order, budget)?.word);
    }
    let mut counts = vec![0u64; n + 1];
    for c in &classes {
        let l = c.x_length(g);
        debug_assert!(l <= n, "canonical form no longer than any class member");
        counts[l] += 1;
    }
    Ok(counts)
}

/// Counts, per length 1..n, of the nonempty admissible transversal
/// representatives for G_{Lk(v)} in G_{V minus v}: normal forms whose
/// first letter's vertex lies outside Lk(v), under an ordering with
/// Lk(v) first.
pub fn enumerate_transversal(g: &GraphSpec, v: usize, n: usize) -> Result<Vec<u64>, OracleError> {
    let rest = g.full_set().remove(v);
    let (sub, old_ids) = g.induced(rest);
    let lk = g.neighbours(v);
    let mut lk_new = VertexSubset::EMPTY;
    for (new, &old) in old_ids.iter().enumerate() {
        if lk.contains(old) {
            lk_new = lk_new.insert(new);
        }
    }
    let order = VertexOrder::with_first(sub.vertex_count(), lk_new);
    let map = ball_map(&sub, n, &order)?;
    let mut counts = vec![0u64; n + 1];
    for (w, &l) in &map {
        if let Some(first) = w.0.first() {
            if !lk_new.contains(first.vertex) {
                counts[l] += 1;
            }
        }
    }
    counts.remove(0);
    Ok(counts)
}
