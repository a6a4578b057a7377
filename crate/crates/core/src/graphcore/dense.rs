use rayon::prelude::*;

/// Undirected simple graph stored as one bit row per vertex.
#[derive(Clone, PartialEq, Eq)]
pub struct DenseGraph {
    n: usize,
    words: usize,
    bits: Vec<u64>,
    labels: Option<Vec<String>>,
}

impl std::fmt::Debug for DenseGraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "DenseGraph(n={}, edges={})", self.n, self.edge_count())
    }
}

#[inline]
pub(crate) fn and_count(a: &[u64], b: &[u64]) -> u32 {
    a.iter().zip(b).map(|(x, y)| (x & y).count_ones()).sum()
}

#[inline]
pub(crate) fn count(a: &[u64]) -> u32 {
    a.iter().map(|x| x.count_ones()).sum()
}

/// Indices of the set bits.
pub(crate) fn ones(a: &[u64]) -> impl Iterator<Item = u32> + '_ {
    a.iter().enumerate().flat_map(|(w, &word)| {
        let mut bits = word;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let t = bits.trailing_zeros();
            bits &= bits - 1;
            Some((w as u32) * 64 + t)
        })
    })
}

#[inline]
pub(crate) fn set_bit(a: &mut [u64], i: usize) {
    a[i / 64] |= 1 << (i % 64);
}

#[inline]
pub(crate) fn get_bit(a: &[u64], i: usize) -> bool {
    a[i / 64] >> (i % 64) & 1 == 1
}

impl DenseGraph {
    /// Edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Self {
        let words = n.div_ceil(64);
        DenseGraph { n, words, bits: vec![0; n * words], labels: None }
    }

    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (u32, u32)>) -> Self {
        let mut g = Self::new(n);
        for (u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    /// Builds every row in parallel from `neighbors(i, buf)`, which must push
    /// the neighbors of `i`. The relation has to be symmetric; rows are not
    /// cross-checked.
    pub fn from_neighbor_fn<F>(n: usize, neighbors: F) -> Self
    where
        F: Fn(usize, &mut Vec<u32>) + Sync,
    {
        let mut g = Self::new(n);
        let words = g.words;
        if words > 0 {
            g.bits.par_chunks_mut(words).enumerate().for_each_init(Vec::new, |buf, (i, row)| {
                buf.clear();
                neighbors(i, buf);
                for &j in buf.iter() {
                    if j as usize != i {
                        set_bit(row, j as usize);
                    }
                }
            });
        }
        g
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// Number of `u64` words per row.
    pub fn words(&self) -> usize {
        self.words
    }

    #[inline]
    pub fn row(&self, i: u32) -> &[u64] {
        let s = i as usize * self.words;
        &self.bits[s..s + self.words]
    }

    #[inline]
    pub fn has_edge(&self, i: u32, j: u32) -> bool {
        get_bit(self.row(i), j as usize)
    }

    pub fn add_edge(&mut self, i: u32, j: u32) {
        if i != j {
            self.set(i, j, true);
            self.set(j, i, true);
        }
    }

    pub fn remove_edge(&mut self, i: u32, j: u32) {
        self.set(i, j, false);
        self.set(j, i, false);
    }

    pub fn toggle_edge(&mut self, i: u32, j: u32) {
        if i != j {
            let on = !self.has_edge(i, j);
            self.set(i, j, on);
            self.set(j, i, on);
        }
    }

    fn set(&mut self, i: u32, j: u32, on: bool) {
        let idx = i as usize * self.words + j as usize / 64;
        let mask = 1u64 << (j % 64);
        if on {
            self.bits[idx] |= mask;
        } else {
            self.bits[idx] &= !mask;
        }
    }

    pub fn degree(&self, i: u32) -> u32 {
        count(self.row(i))
    }

    pub fn neighbors(&self, i: u32) -> impl Iterator<Item = u32> + '_ {
        ones(self.row(i))
    }

    pub fn edge_count(&self) -> u64 {
        self.bits.iter().map(|w| w.count_ones() as u64).sum::<u64>() / 2
    }

    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        (0..self.n as u32).flat_map(move |i| self.neighbors(i).filter(move |&j| j > i).map(move |j| (i, j)))
    }

    pub fn complement(&self) -> Self {
        let mut g = self.clone();
        let tail = self.n % 64;
        for i in 0..self.n {
            let row = &mut g.bits[i * self.words..(i + 1) * self.words];
            for w in row.iter_mut() {
                *w = !*w;
            }
            if tail != 0 {
                row[self.words - 1] &= (1u64 << tail) - 1;
            }
            row[i / 64] &= !(1u64 << (i % 64));
        }
        g
    }

    /// The graph with vertex `i` renamed to `perm[i]`.
    pub fn relabel(&self, perm: &[u32]) -> Self {
        assert_eq!(perm.len(), self.n);
        Self::from_edges(self.n, self.edges().map(|(u, v)| (perm[u as usize], perm[v as usize])))
    }

    pub fn induced(&self, vertices: &[u32]) -> Self {
        let mut g = Self::new(vertices.len());
        for (a, &u) in vertices.iter().enumerate() {
            for (b, &v) in vertices.iter().enumerate().skip(a + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(a as u32, b as u32);
                }
            }
        }
        g
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n as u32).into_par_iter().all(|i| !self.has_edge(i, i) && self.neighbors(i).all(|j| self.has_edge(j, i)))
    }

    pub fn set_labels(&mut self, labels: Vec<String>) {
        assert_eq!(labels.len(), self.n);
        self.labels = Some(labels);
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Common neighborhood of two vertices as a bit row.
    pub fn common_row(&self, x: u32, y: u32) -> Vec<u64> {
        self.row(x).iter().zip(self.row(y)).map(|(a, b)| a & b).collect()
    }
}

/// `Γ(x) ∩ Γ(y)`, sorted.
pub fn common_neighbors(g: &DenseGraph, x: u32, y: u32) -> Vec<u32> {
    ones(&g.common_row(x, y)).collect()
}
