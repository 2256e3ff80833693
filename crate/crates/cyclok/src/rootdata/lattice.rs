use num_integer::Integer;
use num_rational::Ratio;

/// Hermite-style row reduction of integer generators into an upper-triangular basis.
fn triangular_basis(gens: &[Vec<i64>], dim: usize) -> Vec<Vec<i128>> {
    let mut rows: Vec<Vec<i128>> = gens
        .iter()
        .map(|g| g.iter().map(|&x| x as i128).collect())
        .collect();
    let mut basis = Vec::new();
    for col in 0..dim {
        loop {
            rows.retain(|row| row.iter().any(|&x| x != 0));
            let mut nz: Vec<usize> = (0..rows.len()).filter(|&i| rows[i][col] != 0).collect();
            if nz.len() <= 1 {
                break;
            }
            nz.sort_by_key(|&i| rows[i][col].abs());
            let p = nz[0];
            let pivot = rows[p].clone();
            for &i in &nz[1..] {
                let q = Integer::div_floor(&rows[i][col], &pivot[col]);
                for (x, y) in rows[i].iter_mut().zip(&pivot) {
                    *x -= q * y;
                }
            }
        }
        if let Some(p) = (0..rows.len()).find(|&i| rows[i][col] != 0) {
            basis.push(rows.remove(p));
        }
    }
    basis
}

/// Order of the unit vector `e_index` in `Z^dim / L`, where `L` is generated by `gens`.
/// Returns `None` when `L` does not have full rank.
pub fn order_modulo_lattice(gens: &[Vec<i64>], index: usize, dim: usize) -> Option<u64> {
    let basis = triangular_basis(gens, dim);
    if basis.len() != dim {
        return None;
    }
    // Solve x·B = e_index for the row vector x.
    let mut x: Vec<Ratio<i128>> = Vec::with_capacity(dim);
    for j in 0..dim {
        let target = Ratio::from_integer(if j == index { 1 } else { 0 });
        let acc: Ratio<i128> = (0..j)
            .map(|l| x[l] * Ratio::from_integer(basis[l][j]))
            .sum();
        x.push((target - acc) / Ratio::from_integer(basis[j][j]));
    }
    let order = x.iter().fold(1i128, |acc, q| acc.lcm(q.denom()));
    Some(order as u64)
}
