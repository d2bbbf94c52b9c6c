//! Dense two-dimensional array oracle for the hypersparse path.
//!
//! Every matrix operation and every scalar quantity must agree exactly with
//! a brute-force dense accumulation over small index spaces. The oracle is
//! deliberately independent of the sparse implementation: it stores a full
//! n×n grid and recomputes each quantity by definition.

use darkscope_core::quantities::{
    aggregate, destination_fanin, destination_packets, source_fanout, source_packets,
    NetworkQuantities,
};
use darkscope_core::{hierarchical_sum, DegreeVector, EdgeTriple, TrafficMatrix};
use rand_chacha::ChaCha20Rng;
use rand_core::{RngCore, SeedableRng};

/// Brute-force dense matrix over a small square index space.
struct DenseOracle {
    n: usize,
    cells: Vec<u64>,
}

impl DenseOracle {
    fn new(n: usize) -> Self {
        Self {
            n,
            cells: vec![0; n * n],
        }
    }

    fn from_triples(n: usize, triples: &[EdgeTriple]) -> Self {
        let mut dense = Self::new(n);
        for t in triples {
            dense.cells[t.src as usize * n + t.dst as usize] += t.count;
        }
        dense
    }

    fn get(&self, i: usize, j: usize) -> u64 {
        self.cells[i * self.n + j]
    }

    fn to_matrix(&self) -> TrafficMatrix {
        let mut triples = Vec::new();
        for i in 0..self.n {
            for j in 0..self.n {
                if self.get(i, j) > 0 {
                    triples.push(EdgeTriple::new(i as u32, j as u32, self.get(i, j)));
                }
            }
        }
        TrafficMatrix::from_triples(triples).unwrap()
    }

    fn row_sums(&self) -> DegreeVector {
        let pairs = (0..self.n).filter_map(|i| {
            let sum: u64 = (0..self.n).map(|j| self.get(i, j)).sum();
            (sum > 0).then_some((i as u32, sum))
        });
        DegreeVector::from_pairs(pairs).unwrap()
    }

    fn col_sums(&self) -> DegreeVector {
        let pairs = (0..self.n).filter_map(|j| {
            let sum: u64 = (0..self.n).map(|i| self.get(i, j)).sum();
            (sum > 0).then_some((j as u32, sum))
        });
        DegreeVector::from_pairs(pairs).unwrap()
    }

    fn row_nnz(&self) -> DegreeVector {
        let pairs = (0..self.n).filter_map(|i| {
            let nnz = (0..self.n).filter(|&j| self.get(i, j) > 0).count() as u64;
            (nnz > 0).then_some((i as u32, nnz))
        });
        DegreeVector::from_pairs(pairs).unwrap()
    }

    fn col_nnz(&self) -> DegreeVector {
        let pairs = (0..self.n).filter_map(|j| {
            let nnz = (0..self.n).filter(|&i| self.get(i, j) > 0).count() as u64;
            (nnz > 0).then_some((j as u32, nnz))
        });
        DegreeVector::from_pairs(pairs).unwrap()
    }

    fn quantities(&self) -> NetworkQuantities {
        let rows = self.row_sums();
        let cols = self.col_sums();
        let row_nnz = self.row_nnz();
        let col_nnz = self.col_nnz();
        NetworkQuantities {
            valid_packets: self.cells.iter().sum(),
            unique_links: self.cells.iter().filter(|&&c| c > 0).count() as u64,
            max_link_packets: self.cells.iter().copied().max().unwrap_or(0),
            unique_sources: rows.len() as u64,
            max_source_packets: rows.max_value(),
            max_source_fanout: row_nnz.max_value(),
            unique_destinations: cols.len() as u64,
            max_destination_packets: cols.max_value(),
            max_destination_fanin: col_nnz.max_value(),
        }
    }
}

fn random_triples(rng: &mut ChaCha20Rng, n: usize, count: usize, max_count: u64) -> Vec<EdgeTriple> {
    (0..count)
        .map(|_| {
            EdgeTriple::new(
                (rng.next_u64() % n as u64) as u32,
                (rng.next_u64() % n as u64) as u32,
                rng.next_u64() % max_count + 1,
            )
        })
        .collect()
}

#[test]
fn construction_matches_dense_accumulation() {
    let mut rng = ChaCha20Rng::seed_from_u64(0x5eed_0001);
    let triples = random_triples(&mut rng, 16, 1000, 8);
    let sparse = TrafficMatrix::from_triples(triples.clone()).unwrap();
    let dense = DenseOracle::from_triples(16, &triples);
    assert_eq!(sparse, dense.to_matrix());
    assert_eq!(
        sparse.total_packets(),
        triples.iter().map(|t| t.count).sum::<u64>()
    );
}

#[test]
fn merge_of_blocks_equals_flat_construction() {
    let mut rng = ChaCha20Rng::seed_from_u64(0x5eed_0002);
    let blocks: Vec<Vec<EdgeTriple>> = (0..128)
        .map(|_| random_triples(&mut rng, 64, 50, 4))
        .collect();

    let merged = blocks
        .iter()
        .map(|b| TrafficMatrix::from_triples(b.clone()).unwrap())
        .try_fold(TrafficMatrix::empty(), |acc, m| acc.merge(&m))
        .unwrap();

    let flat: Vec<EdgeTriple> = blocks.concat();
    assert_eq!(merged, TrafficMatrix::from_triples(flat).unwrap());
}

#[test]
fn hierarchical_sum_equals_flat_construction() {
    let mut rng = ChaCha20Rng::seed_from_u64(0x5eed_0003);
    let blocks: Vec<Vec<EdgeTriple>> = (0..128)
        .map(|_| random_triples(&mut rng, 256, 1 << 10, 1))
        .collect();

    let matrices: Vec<TrafficMatrix> = blocks
        .iter()
        .map(|b| TrafficMatrix::from_triples(b.clone()).unwrap())
        .collect();
    let tree = hierarchical_sum(&matrices).unwrap();
    let flat = TrafficMatrix::from_triples(blocks.concat()).unwrap();
    assert_eq!(tree, flat);
    assert_eq!(tree.total_packets(), (128 * (1 << 10)) as u64);
}

#[test]
fn margins_match_dense_oracle() {
    let mut rng = ChaCha20Rng::seed_from_u64(0x5eed_0004);
    for _ in 0..50 {
        let triples = random_triples(&mut rng, 32, 200, 16);
        let sparse = TrafficMatrix::from_triples(triples.clone()).unwrap();
        let dense = DenseOracle::from_triples(32, &triples);
        assert_eq!(sparse.row_sums(), dense.row_sums());
        assert_eq!(sparse.col_sums(), dense.col_sums());
        assert_eq!(source_packets(&sparse), dense.row_sums());
        assert_eq!(source_fanout(&sparse), dense.row_nnz());
        assert_eq!(destination_packets(&sparse), dense.col_sums());
        assert_eq!(destination_fanin(&sparse), dense.col_nnz());
    }
}

#[test]
fn quantities_match_dense_oracle() {
    let mut rng = ChaCha20Rng::seed_from_u64(0x5eed_0005);
    for round in 0..100 {
        let nnz = (round % 7) * 60 + 5;
        let triples = random_triples(&mut rng, 64, nnz, 32);
        let sparse = TrafficMatrix::from_triples(triples.clone()).unwrap();
        let dense = DenseOracle::from_triples(64, &triples);
        assert_eq!(aggregate(&sparse), dense.quantities());
    }
}

#[test]
fn zero_norm_matches_dense_and_is_idempotent() {
    let mut rng = ChaCha20Rng::seed_from_u64(0x5eed_0006);
    for _ in 0..20 {
        let triples = random_triples(&mut rng, 32, 150, 9);
        let sparse = TrafficMatrix::from_triples(triples.clone()).unwrap();
        let dense = DenseOracle::from_triples(32, &triples);

        let mut indicator = DenseOracle::new(32);
        for i in 0..32 {
            for j in 0..32 {
                if dense.get(i, j) > 0 {
                    indicator.cells[i * 32 + j] = 1;
                }
            }
        }
        let z = sparse.zero_norm();
        assert_eq!(z, indicator.to_matrix());
        assert_eq!(z.zero_norm(), z);
        assert_eq!(z.nnz(), sparse.nnz());
    }
}

#[test]
fn permutation_leaves_every_aggregate_unchanged() {
    let mut rng = ChaCha20Rng::seed_from_u64(0x5eed_0007);
    for _ in 0..20 {
        let triples = random_triples(&mut rng, 64, 300, 12);
        let sparse = TrafficMatrix::from_triples(triples).unwrap();

        // Random bijections over the whole small index space.
        let mut row_map: Vec<u32> = (0..64).collect();
        let mut col_map: Vec<u32> = (0..64).collect();
        for i in (1..64usize).rev() {
            row_map.swap(i, (rng.next_u64() % (i as u64 + 1)) as usize);
            col_map.swap(i, (rng.next_u64() % (i as u64 + 1)) as usize);
        }
        let permuted = sparse
            .permute(|i| row_map[i as usize], |j| col_map[j as usize])
            .unwrap();

        assert_eq!(permuted.total_packets(), sparse.total_packets());
        assert_eq!(permuted.nnz(), sparse.nnz());
        assert_eq!(aggregate(&permuted), aggregate(&sparse));
    }
}
