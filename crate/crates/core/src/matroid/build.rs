use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{k_subsets, Matroid, Subset, MAX_ELEMENTS};
use crate::error::{Error, Result};

/// The uniform matroid `U_{r,n}`: every `r`-subset is a basis.
pub fn uniform(r: usize, n: usize) -> Result<Matroid> {
    if n > MAX_ELEMENTS {
        return Err(Error::TooManyElements(n));
    }
    if r > n {
        return Err(Error::InvalidRank { r, n });
    }
    Ok(Matroid::from_bases_unchecked(n, k_subsets(n, r).collect()))
}

/// Column matroid of a rational matrix: element `j` is column `j`.
pub fn matroid_from_matrix(rows: &[Vec<BigRational>]) -> Result<Matroid> {
    let width = rows.first().map_or(0, Vec::len);
    if rows.is_empty() || width == 0 {
        return Err(Error::EmptyMatrix);
    }
    for (i, row) in rows.iter().enumerate() {
        if row.len() != width {
            return Err(Error::RaggedMatrix {
                row: i,
                got: row.len(),
                expected: width,
            });
        }
    }
    if width > MAX_ELEMENTS {
        return Err(Error::TooManyElements(width));
    }
    let integral: Vec<Vec<BigInt>> = rows.iter().map(|row| clear_denominators(row)).collect();
    let all: Vec<usize> = (0..width).collect();
    let r = column_rank(&integral, &all);
    let bases = k_subsets(width, r)
        .filter(|s| column_rank(&integral, &s.to_vec()) == r)
        .collect();
    Ok(Matroid::from_bases_unchecked(width, bases))
}

fn clear_denominators(row: &[BigRational]) -> Vec<BigInt> {
    let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect()
}

/// Rank of the selected columns by Bareiss fraction-free elimination.
fn column_rank(rows: &[Vec<BigInt>], cols: &[usize]) -> usize {
    let mut a: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|row| cols.iter().map(|&c| row[c].clone()).collect())
        .collect();
    let height = a.len();
    let mut prev = BigInt::one();
    let mut rank = 0;
    for c in 0..cols.len() {
        let Some(p) = (rank..height).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        for i in rank + 1..height {
            for j in c + 1..cols.len() {
                let v = (&a[i][j] * &a[rank][c] - &a[i][c] * &a[rank][j]) / &prev;
                a[i][j] = v;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[rank][c].clone();
        rank += 1;
        if rank == height {
            break;
        }
    }
    rank
}

/// Cycle matroid of a multigraph on `vertices` vertices; element `j` is edge `j`.
/// Self-loops become matroid loops.
pub fn matroid_from_graph(vertices: usize, edges: &[(usize, usize)]) -> Result<Matroid> {
    if edges.len() > MAX_ELEMENTS {
        return Err(Error::TooManyElements(edges.len()));
    }
    if let Some(&(u, v)) = edges.iter().find(|&&(u, v)| u >= vertices || v >= vertices) {
        return Err(Error::BadEdge(u, v));
    }
    let n = edges.len();
    let forest_size = |s: Subset| -> usize {
        let mut parent: Vec<usize> = (0..vertices).collect();
        let mut size = 0;
        for e in s.iter() {
            let (u, v) = edges[e];
            let (a, b) = (root(&mut parent, u), root(&mut parent, v));
            if a != b {
                parent[a] = b;
                size += 1;
            }
        }
        size
    };
    let r = forest_size(Subset::full(n));
    let bases = k_subsets(n, r).filter(|&s| forest_size(s) == r).collect();
    Ok(Matroid::from_bases_unchecked(n, bases))
}

fn root(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn uniform_counts() {
        assert_eq!(uniform(2, 4).unwrap().bases().len(), 6);
        assert_eq!(uniform(0, 3).unwrap().bases(), &[Subset::EMPTY]);
        assert!(matches!(uniform(3, 2), Err(Error::InvalidRank { .. })));
    }

    #[test]
    fn matrix_examples() {
        let rows = vec![vec![q(1), q(0), q(1)], vec![q(0), q(1), q(1)]];
        assert_eq!(matroid_from_matrix(&rows).unwrap(), uniform(2, 3).unwrap());
        let half = BigRational::new(1.into(), 2.into());
        let rows = vec![vec![half.clone(), q(1), q(0)], vec![q(1), q(2), q(0)]];
        let m = matroid_from_matrix(&rows).unwrap();
        assert_eq!(m.rank(), 1);
        assert_eq!(m.loops(), Subset::singleton(2));
        assert_eq!(matroid_from_matrix(&[]), Err(Error::EmptyMatrix));
        assert!(matches!(
            matroid_from_matrix(&[vec![q(1)], vec![]]),
            Err(Error::RaggedMatrix { .. })
        ));
    }

    #[test]
    fn graph_examples() {
        let triangle = matroid_from_graph(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(triangle, uniform(2, 3).unwrap());
        let k4: Vec<(usize, usize)> = (0..4)
            .flat_map(|u| (u + 1..4).map(move |v| (u, v)))
            .collect();
        let m = matroid_from_graph(4, &k4).unwrap();
        assert_eq!((m.rank(), m.bases().len()), (3, 16));
        let looped = matroid_from_graph(2, &[(0, 0), (0, 1)]).unwrap();
        assert_eq!(looped.loops(), Subset::singleton(0));
        assert_eq!(matroid_from_graph(2, &[(0, 2)]), Err(Error::BadEdge(0, 2)));
    }
}
