//! Tripartite graphs as three packed biadjacency bit-matrices.
//!
//! Vertices live in three labeled classes `A`, `B`, `C`; every edge crosses
//! classes, so intra-class edges are unrepresentable by construction. Rows
//! are packed into `u16` words (classes hold at most nine vertices), which
//! keeps neighborhood queries and the search inner loops branch-light.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::fmt::Write as _;

/// Library bound on vertices per class.
pub const MAX_CLASS: usize = 9;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Class {
    A,
    B,
    C,
}

impl Class {
    pub const ALL: [Class; 3] = [Class::A, Class::B, Class::C];

    pub fn index(self) -> usize {
        match self {
            Class::A => 0,
            Class::B => 1,
            Class::C => 2,
        }
    }

    pub fn from_index(i: usize) -> Class {
        Class::ALL[i]
    }

    /// The two other classes, in label order.
    pub fn others(self) -> (Class, Class) {
        match self {
            Class::A => (Class::B, Class::C),
            Class::B => (Class::A, Class::C),
            Class::C => (Class::A, Class::B),
        }
    }

    /// The class that is neither `self` nor `other`.
    pub fn third(self, other: Class) -> Class {
        debug_assert!(self != other);
        Class::from_index(3 - self.index() - other.index())
    }

    pub fn name(self) -> &'static str {
        match self {
            Class::A => "A",
            Class::B => "B",
            Class::C => "C",
        }
    }
}

/// A vertex identified by its class and index within the class.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Vertex {
    pub class: Class,
    pub index: usize,
}

impl Vertex {
    pub fn new(class: Class, index: usize) -> Vertex {
        Vertex { class, index }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("class size {0} outside 1..={MAX_CLASS}")]
    BadClassSize(usize),
    #[error("malformed graph encoding: {0}")]
    Parse(&'static str),
    #[error("unknown catalog graph `{0}`")]
    UnknownName(String),
}

/// Index of the matrix holding the pair `(x, y)` and whether the stored
/// orientation is transposed relative to `(x, y)`.
fn pair_slot(x: Class, y: Class) -> (usize, bool) {
    match (x, y) {
        (Class::A, Class::B) => (0, false),
        (Class::B, Class::A) => (0, true),
        (Class::A, Class::C) => (1, false),
        (Class::C, Class::A) => (1, true),
        (Class::B, Class::C) => (2, false),
        (Class::C, Class::B) => (2, true),
        _ => panic!("pair within one class"),
    }
}

/// Row class of each stored matrix: AB and AC are indexed by A, BC by B.
const PAIR_ROW_CLASS: [Class; 3] = [Class::A, Class::A, Class::B];
const PAIR_COL_CLASS: [Class; 3] = [Class::B, Class::C, Class::C];
const PAIR_NAMES: [&str; 3] = ["AB", "AC", "BC"];

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TripartiteGraph {
    sizes: [usize; 3],
    /// `rows[p][i]` is the bitmask of column-class neighbors of row vertex `i`.
    rows: [[u16; MAX_CLASS]; 3],
}

impl TripartiteGraph {
    /// Empty graph on the given class sizes.
    pub fn new(sizes: [usize; 3]) -> Result<TripartiteGraph, GraphError> {
        for &s in &sizes {
            if s == 0 || s > MAX_CLASS {
                return Err(GraphError::BadClassSize(s));
            }
        }
        Ok(TripartiteGraph {
            sizes,
            rows: [[0; MAX_CLASS]; 3],
        })
    }

    /// Builds directly from row bitmasks (AB and AC rows indexed by A, BC
    /// rows indexed by B); used by the search hot loop.
    pub fn from_rows(
        sizes: [usize; 3],
        ab: &[u16],
        ac: &[u16],
        bc: &[u16],
    ) -> Result<TripartiteGraph, GraphError> {
        let mut g = TripartiteGraph::new(sizes)?;
        for (p, rows) in [ab, ac, bc].into_iter().enumerate() {
            let (nr, nc) = g.pair_dims(p);
            debug_assert_eq!(rows.len(), nr);
            for i in 0..nr {
                debug_assert_eq!(rows[i] & !low_mask(nc), 0);
                g.rows[p][i] = rows[i];
            }
        }
        Ok(g)
    }

    pub fn complete(sizes: [usize; 3]) -> Result<TripartiteGraph, GraphError> {
        let mut g = TripartiteGraph::new(sizes)?;
        for p in 0..3 {
            let (nr, nc) = g.pair_dims(p);
            for i in 0..nr {
                g.rows[p][i] = low_mask(nc);
            }
        }
        Ok(g)
    }

    pub fn sizes(&self) -> [usize; 3] {
        self.sizes
    }

    pub fn size(&self, class: Class) -> usize {
        self.sizes[class.index()]
    }

    fn pair_dims(&self, p: usize) -> (usize, usize) {
        (
            self.sizes[PAIR_ROW_CLASS[p].index()],
            self.sizes[PAIR_COL_CLASS[p].index()],
        )
    }

    pub fn has_edge(&self, x: Vertex, y: Vertex) -> bool {
        let (p, t) = pair_slot(x.class, y.class);
        let (i, j) = if t {
            (y.index, x.index)
        } else {
            (x.index, y.index)
        };
        self.rows[p][i] >> j & 1 == 1
    }

    pub fn set_edge(&mut self, x: Vertex, y: Vertex, present: bool) {
        let (p, t) = pair_slot(x.class, y.class);
        let (i, j) = if t {
            (y.index, x.index)
        } else {
            (x.index, y.index)
        };
        debug_assert!(i < self.sizes[PAIR_ROW_CLASS[p].index()]);
        debug_assert!(j < self.sizes[PAIR_COL_CLASS[p].index()]);
        if present {
            self.rows[p][i] |= 1 << j;
        } else {
            self.rows[p][i] &= !(1 << j);
        }
    }

    /// Bitmask of `target`-class neighbors of `v`.
    pub fn neighbors(&self, v: Vertex, target: Class) -> u16 {
        debug_assert!(v.class != target);
        let (p, t) = pair_slot(v.class, target);
        if !t {
            self.rows[p][v.index]
        } else {
            let (nr, _) = self.pair_dims(p);
            let mut mask = 0u16;
            for i in 0..nr {
                mask |= (self.rows[p][i] >> v.index & 1) << i;
            }
            mask
        }
    }

    /// Bitmask over the third class of common neighbors of `x` and `y`.
    pub fn common_neighborhood(&self, x: Vertex, y: Vertex) -> u16 {
        let z = x.class.third(y.class);
        self.neighbors(x, z) & self.neighbors(y, z)
    }

    /// The tripartite complement: edges deleted from the complete tripartite
    /// graph on the same classes. An involution.
    pub fn complement(&self) -> TripartiteGraph {
        let mut g = self.clone();
        for p in 0..3 {
            let (nr, nc) = g.pair_dims(p);
            for i in 0..nr {
                g.rows[p][i] = !self.rows[p][i] & low_mask(nc);
            }
        }
        g
    }

    /// Calls `f` for each triangle `(a, b, c)` (indices into A, B, C).
    pub fn for_each_triangle(&self, mut f: impl FnMut(usize, usize, usize)) {
        let [na, _, _] = self.sizes;
        for a in 0..na {
            let row_b = self.rows[0][a];
            let row_c = self.rows[1][a];
            let mut bs = row_b;
            while bs != 0 {
                let b = bs.trailing_zeros() as usize;
                bs &= bs - 1;
                let mut cs = self.rows[2][b] & row_c;
                while cs != 0 {
                    let c = cs.trailing_zeros() as usize;
                    cs &= cs - 1;
                    f(a, b, c);
                }
            }
        }
    }

    pub fn triangles(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        self.for_each_triangle(|a, b, c| out.push((a, b, c)));
        out
    }

    pub fn has_triangle(&self) -> bool {
        let [na, _, _] = self.sizes;
        for a in 0..na {
            let row_b = self.rows[0][a];
            let row_c = self.rows[1][a];
            let mut bs = row_b;
            while bs != 0 {
                let b = bs.trailing_zeros() as usize;
                bs &= bs - 1;
                if self.rows[2][b] & row_c != 0 {
                    return true;
                }
            }
        }
        false
    }

    pub fn edge_count(&self) -> usize {
        let mut n = 0;
        for p in 0..3 {
            let (nr, _) = self.pair_dims(p);
            for i in 0..nr {
                n += self.rows[p][i].count_ones() as usize;
            }
        }
        n
    }

    /// All edges as vertex pairs, in (AB, AC, BC) row-major order.
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut out = Vec::new();
        for p in 0..3 {
            let (nr, nc) = self.pair_dims(p);
            for i in 0..nr {
                for j in 0..nc {
                    if self.rows[p][i] >> j & 1 == 1 {
                        out.push((
                            Vertex::new(PAIR_ROW_CLASS[p], i),
                            Vertex::new(PAIR_COL_CLASS[p], j),
                        ));
                    }
                }
            }
        }
        out
    }

    /// Graph with vertex `(class, idx)` removed; later indices shift down.
    pub fn delete_vertex(&self, class: Class, idx: usize) -> TripartiteGraph {
        debug_assert!(self.sizes[class.index()] > 1);
        debug_assert!(idx < self.sizes[class.index()]);
        let mut sizes = self.sizes;
        sizes[class.index()] -= 1;
        let mut g = TripartiteGraph::new(sizes).expect("sizes stay valid");
        for p in 0..3 {
            let (nr, nc) = self.pair_dims(p);
            let rc = PAIR_ROW_CLASS[p];
            let cc = PAIR_COL_CLASS[p];
            for i in 0..nr {
                if rc == class && i == idx {
                    continue;
                }
                let ni = if rc == class && i > idx { i - 1 } else { i };
                let mut row = self.rows[p][i];
                if cc == class {
                    row = drop_bit(row, idx);
                } else {
                    row &= low_mask(nc);
                }
                g.rows[p][ni] = row;
            }
        }
        g
    }

    /// Graph with one vertex appended to `class`, adjacent to the given
    /// masks over the two other classes (in label order).
    pub fn add_vertex(&self, class: Class, nb_first: u16, nb_second: u16) -> TripartiteGraph {
        let mut sizes = self.sizes;
        sizes[class.index()] += 1;
        assert!(sizes[class.index()] <= MAX_CLASS);
        let mut g = TripartiteGraph::new(sizes).expect("checked above");
        g.rows = self.rows;
        let new_idx = sizes[class.index()] - 1;
        let (o1, o2) = class.others();
        for (other, mask) in [(o1, nb_first), (o2, nb_second)] {
            for j in 0..self.sizes[other.index()] {
                if mask >> j & 1 == 1 {
                    g.set_edge(Vertex::new(class, new_idx), Vertex::new(other, j), true);
                }
            }
        }
        g
    }

    /// Induced subgraph on the vertices selected by the three bitmasks.
    pub fn induced(&self, keep: [u16; 3]) -> TripartiteGraph {
        let mut sizes = [0usize; 3];
        let mut maps: [Vec<usize>; 3] = [Vec::new(), Vec::new(), Vec::new()];
        for c in 0..3 {
            for i in 0..self.sizes[c] {
                if keep[c] >> i & 1 == 1 {
                    maps[c].push(i);
                }
            }
            sizes[c] = maps[c].len();
        }
        let mut g = TripartiteGraph::new(sizes).expect("nonempty selections required");
        for p in 0..3 {
            let rc = PAIR_ROW_CLASS[p].index();
            let cc = PAIR_COL_CLASS[p].index();
            for (ni, &i) in maps[rc].iter().enumerate() {
                for (nj, &j) in maps[cc].iter().enumerate() {
                    if self.rows[p][i] >> j & 1 == 1 {
                        g.rows[p][ni] |= 1 << nj;
                    }
                }
            }
        }
        g
    }

    /// Applies a relabeling: class `c` is sent to `class_perm[c]` and vertex
    /// `i` of class `c` to index `vertex_perms[c][i]` within the image class.
    /// The image class must have the same size.
    pub fn relabel(&self, class_perm: [usize; 3], vertex_perms: [&[usize]; 3]) -> TripartiteGraph {
        let mut sizes = [0usize; 3];
        for c in 0..3 {
            sizes[class_perm[c]] = self.sizes[c];
        }
        let mut g = TripartiteGraph::new(sizes).expect("permutation keeps sizes");
        for (x, y) in self.edges() {
            let nx = Vertex::new(
                Class::from_index(class_perm[x.class.index()]),
                vertex_perms[x.class.index()][x.index],
            );
            let ny = Vertex::new(
                Class::from_index(class_perm[y.class.index()]),
                vertex_perms[y.class.index()][y.index],
            );
            g.set_edge(nx, ny, true);
        }
        g
    }

    /// Bit-exact text encoding:
    /// `t[|A|,|B|,|C|]AB=<bits>;AC=<bits>;BC=<bits>`, bits row-major with
    /// rows indexed by the first-named class.
    pub fn encode(&self) -> String {
        let mut s = String::new();
        let _ = write!(
            s,
            "t[{},{},{}]",
            self.sizes[0], self.sizes[1], self.sizes[2]
        );
        for p in 0..3 {
            if p > 0 {
                s.push(';');
            }
            let _ = write!(s, "{}=", PAIR_NAMES[p]);
            let (nr, nc) = self.pair_dims(p);
            for i in 0..nr {
                for j in 0..nc {
                    s.push(if self.rows[p][i] >> j & 1 == 1 {
                        '1'
                    } else {
                        '0'
                    });
                }
            }
        }
        s
    }

    pub fn parse(text: &str) -> Result<TripartiteGraph, GraphError> {
        let rest = text
            .strip_prefix("t[")
            .ok_or(GraphError::Parse("missing `t[` prefix"))?;
        let (head, body) = rest
            .split_once(']')
            .ok_or(GraphError::Parse("missing `]`"))?;
        let mut sizes = [0usize; 3];
        let mut it = head.split(',');
        for s in sizes.iter_mut() {
            *s = it
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or(GraphError::Parse("bad size list"))?;
        }
        if it.next().is_some() {
            return Err(GraphError::Parse("bad size list"));
        }
        let mut g = TripartiteGraph::new(sizes).map_err(|_| GraphError::Parse("bad class size"))?;
        let mut sections = body.split(';');
        for p in 0..3 {
            let sec = sections
                .next()
                .ok_or(GraphError::Parse("missing section"))?;
            let bits = sec
                .strip_prefix(PAIR_NAMES[p])
                .and_then(|s| s.strip_prefix('='))
                .ok_or(GraphError::Parse("bad section label"))?;
            let (nr, nc) = g.pair_dims(p);
            if bits.len() != nr * nc {
                return Err(GraphError::Parse("bit string length mismatch"));
            }
            for (k, ch) in bits.chars().enumerate() {
                let (i, j) = (k / nc, k % nc);
                match ch {
                    '1' => g.rows[p][i] |= 1 << j,
                    '0' => {}
                    _ => return Err(GraphError::Parse("bits must be 0/1")),
                }
            }
        }
        if sections.next().is_some() {
            return Err(GraphError::Parse("trailing section"));
        }
        Ok(g)
    }
}

impl fmt::Debug for TripartiteGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.encode())
    }
}

pub(crate) fn low_mask(n: usize) -> u16 {
    (1u16 << n) - 1
}

/// Removes bit `idx` from `row`, shifting higher bits down.
fn drop_bit(row: u16, idx: usize) -> u16 {
    let low = row & low_mask(idx);
    let high = row >> (idx + 1);
    low | high << idx
}
