use super::word::{Letter, Word};

/// Oriented matching diagram `src → dst`. Endpoints are numbered source-first:
/// source position `i` is endpoint `i`, target position `j` is endpoint `|src| + j`.
/// `partner[x]` is the endpoint matched with `x`; the array is the canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Diagram {
    pub src: Word,
    pub dst: Word,
    pub partner: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeKind {
    Through,
    Cap,
    Cup,
}

/// Letter sitting at endpoint `x` of a diagram with the given words.
pub fn endpoint_letter(src: &Word, dst: &Word, x: usize) -> Letter {
    if x < src.len() {
        src.0[x]
    } else {
        dst.0[x - src.len()]
    }
}

/// Whether `a < b` may be joined by an edge.
pub fn edge_allowed(src: &Word, dst: &Word, a: usize, b: usize) -> bool {
    let p = src.len();
    let la = endpoint_letter(src, dst, a);
    let lb = endpoint_letter(src, dst, b);
    match (a < p, b < p) {
        (true, true) | (false, false) => la.pairs_with(lb),
        _ => la == lb,
    }
}

impl Diagram {
    /// Validates a partner array against the words.
    pub fn new(src: Word, dst: Word, partner: Vec<usize>) -> Option<Self> {
        let n = src.len() + dst.len();
        if partner.len() != n {
            return None;
        }
        for (x, &y) in partner.iter().enumerate() {
            if y >= n || y == x || partner[y] != x {
                return None;
            }
            if x < y && !edge_allowed(&src, &dst, x, y) {
                return None;
            }
        }
        Some(Diagram { src, dst, partner })
    }

    pub fn from_edges(src: Word, dst: Word, edges: &[(usize, usize)]) -> Option<Self> {
        let n = src.len() + dst.len();
        let mut partner = vec![usize::MAX; n];
        for &(a, b) in edges {
            if a >= n || b >= n || partner[a] != usize::MAX || partner[b] != usize::MAX {
                return None;
            }
            partner[a] = b;
            partner[b] = a;
        }
        if partner.contains(&usize::MAX) {
            return None;
        }
        Self::new(src, dst, partner)
    }

    /// Edges `(a, b)` with `a < b`, sorted by least endpoint.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.partner
            .iter()
            .enumerate()
            .filter(|(a, b)| a < b)
            .map(|(a, &b)| (a, b))
            .collect()
    }

    pub fn edge_kind(&self, a: usize, b: usize) -> EdgeKind {
        let p = self.src.len();
        match (a < p, b < p) {
            (true, true) => EdgeKind::Cap,
            (false, false) => EdgeKind::Cup,
            _ => EdgeKind::Through,
        }
    }

    /// Through-strand diagram `P → σ(P)` sending source position `i` to target position `σ(i)`.
    pub fn symmetry(perm: &[usize], src: &Word) -> Self {
        let p = src.len();
        assert_eq!(perm.len(), p, "permutation length must equal word length");
        let mut dst = vec![Letter::plain(0); p];
        let mut partner = vec![0; 2 * p];
        for (i, &t) in perm.iter().enumerate() {
            dst[t] = src.0[i];
            partner[i] = p + t;
            partner[p + t] = i;
        }
        Diagram {
            src: src.clone(),
            dst: Word(dst),
            partner,
        }
    }

    pub fn identity(w: &Word) -> Self {
        Self::symmetry(&(0..w.len()).collect::<Vec<_>>(), w)
    }
}

/// All matchings `P → Q`, in lexicographic order of partner arrays.
pub fn hom_basis(src: &Word, dst: &Word) -> Vec<Diagram> {
    let n = src.len() + dst.len();
    let ngens = src.0.iter().chain(&dst.0).map(|l| l.gen + 1).max().unwrap_or(0);
    if src.charge(ngens) != dst.charge(ngens) {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut partner = vec![usize::MAX; n];
    fn rec(src: &Word, dst: &Word, partner: &mut Vec<usize>, out: &mut Vec<Diagram>) {
        let Some(a) = partner.iter().position(|&p| p == usize::MAX) else {
            out.push(Diagram {
                src: src.clone(),
                dst: dst.clone(),
                partner: partner.clone(),
            });
            return;
        };
        for b in a + 1..partner.len() {
            if partner[b] == usize::MAX && edge_allowed(src, dst, a, b) {
                partner[a] = b;
                partner[b] = a;
                rec(src, dst, partner, out);
                partner[a] = usize::MAX;
                partner[b] = usize::MAX;
            }
        }
    }
    rec(src, dst, &mut partner, &mut out);
    out
}

/// Result of closing internal endpoints of a matching.
pub(crate) struct Glued {
    pub partner: Vec<usize>,
    /// Generator index of each closed loop.
    pub loops: Vec<usize>,
}

/// Glues a matching `edge` on nodes `0..edge.len()` along the extra identifications
/// `close` (internal nodes), relabelling externals by `relabel`.
pub(crate) fn glue(
    edge: &[usize],
    close: &[Option<usize>],
    relabel: &[Option<usize>],
    n_out: usize,
    gen_of: impl Fn(usize) -> usize,
) -> Glued {
    let n = edge.len();
    let mut visited = vec![false; n];
    let mut partner = vec![usize::MAX; n_out];
    for x in 0..n {
        let Some(nx) = relabel[x] else { continue };
        if partner[nx] != usize::MAX {
            continue;
        }
        let mut cur = x;
        let end = loop {
            let y = edge[cur];
            match close[y] {
                None => break y,
                Some(z) => {
                    visited[y] = true;
                    visited[z] = true;
                    cur = z;
                }
            }
        };
        let ny = relabel[end].expect("external endpoint without label");
        partner[nx] = ny;
        partner[ny] = nx;
    }
    let mut loops = Vec::new();
    for start in 0..n {
        if visited[start] || close[start].is_none() {
            continue;
        }
        loops.push(gen_of(start));
        let mut cur = start;
        loop {
            let y = edge[cur];
            visited[cur] = true;
            visited[y] = true;
            let z = close[y].expect("loop through external endpoint");
            visited[z] = true;
            cur = z;
            if cur == start {
                break;
            }
        }
    }
    Glued { partner, loops }
}
