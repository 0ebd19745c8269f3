//! Integer-linear independence of small integer vector systems.

use crate::error::ArithError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Independence {
    Independent,
    /// A nonzero integer relation `Σ c_i v_i = 0`, primitive and with a
    /// positive leading nonzero entry.
    Dependent(Vec<i64>),
}

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn ck(v: Option<i128>) -> Result<i128, ArithError> {
    v.ok_or(ArithError::Overflow("integer elimination"))
}

/// Decides whether the only integer combination of `vectors` summing to zero
/// is the trivial one. On dependence, returns one relation, verified by
/// substitution.
///
/// Row reduction is fraction-free: each elimination step cross-multiplies
/// and then divides the row by its content, so entries stay integral.
pub fn int_lin_independent(vectors: &[[i64; 5]]) -> Result<Independence, ArithError> {
    let k = vectors.len();
    if k == 0 {
        return Ok(Independence::Independent);
    }
    // 5 x k matrix whose columns are the vectors
    let mut m: Vec<Vec<i128>> = (0..5)
        .map(|r| vectors.iter().map(|v| v[r] as i128).collect())
        .collect();

    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut row = 0;
    for col in 0..k {
        if row == 5 {
            break;
        }
        let Some(p) = (row..5).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(row, p);
        let pv = m[row][col];
        for r in 0..5 {
            if r == row || m[r][col] == 0 {
                continue;
            }
            let f = m[r][col];
            #[allow(clippy::needless_range_loop)]
            for c in 0..k {
                let lhs = ck(m[r][c].checked_mul(pv))?;
                let rhs = ck(m[row][c].checked_mul(f))?;
                m[r][c] = ck(lhs.checked_sub(rhs))?;
            }
            let g = m[r].iter().fold(0, |acc, &x| gcd(acc, x));
            if g > 1 {
                m[r].iter_mut().for_each(|x| *x /= g);
            }
        }
        pivots.push((row, col));
        row += 1;
    }

    let Some(free) = (0..k).find(|c| !pivots.iter().any(|&(_, pc)| pc == *c)) else {
        return Ok(Independence::Independent);
    };

    // x_free = L (lcm of pivots), x_pc = -m[r][free] * L / m[r][pc]
    let mut lcm: i128 = 1;
    for &(r, c) in &pivots {
        let p = m[r][c].abs();
        lcm = ck((lcm / gcd(lcm, p)).checked_mul(p))?;
    }
    let mut x = vec![0i128; k];
    x[free] = lcm;
    for &(r, c) in &pivots {
        let num = ck(m[r][free].checked_mul(lcm))?;
        x[c] = -num / m[r][c];
    }
    let g = x.iter().fold(0, |acc, &v| gcd(acc, v));
    x.iter_mut().for_each(|v| *v /= g);
    if x.iter().find(|v| **v != 0).is_some_and(|v| *v < 0) {
        x.iter_mut().for_each(|v| *v = -*v);
    }

    // substitute back
    for r in 0..5 {
        let mut s: i128 = 0;
        for (i, v) in vectors.iter().enumerate() {
            s = ck(s.checked_add(ck((v[r] as i128).checked_mul(x[i]))?))?;
        }
        assert_eq!(s, 0, "relation failed verification");
    }
    let rel = x
        .into_iter()
        .map(|v| i64::try_from(v).map_err(|_| ArithError::Overflow("relation")))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Independence::Dependent(rel))
}

#[cfg(test)]
mod tests {
    use super::*;

    const ONE: [i64; 5] = [1, 0, 0, 0, 0];
    const E1: [i64; 5] = [0, 1, 0, 0, 0];
    const E2: [i64; 5] = [0, 0, 1, 0, 0];
    const E3: [i64; 5] = [0, 0, 0, 1, 0];
    const E4: [i64; 5] = [-1, -1, -1, -1, 0];

    #[test]
    fn four_powers_independent() {
        assert_eq!(
            int_lin_independent(&[ONE, E1, E2, E3]).unwrap(),
            Independence::Independent
        );
    }

    #[test]
    fn five_powers_dependent() {
        assert_eq!(
            int_lin_independent(&[ONE, E1, E2, E3, E4]).unwrap(),
            Independence::Dependent(vec![1, 1, 1, 1, 1])
        );
    }

    #[test]
    fn zero_vector() {
        assert_eq!(
            int_lin_independent(&[[0; 5]]).unwrap(),
            Independence::Dependent(vec![1])
        );
    }

    #[test]
    fn scaled_relation_is_primitive() {
        let v = [[2, 4, 0, 0, 0], [3, 6, 0, 0, 0]];
        assert_eq!(
            int_lin_independent(&v).unwrap(),
            Independence::Dependent(vec![3, -2])
        );
    }

    #[test]
    fn more_vectors_than_dimension() {
        let v = [ONE, E1, E2, E3, [0, 0, 0, 0, 1], [1, 2, 3, 4, 5]];
        let Independence::Dependent(rel) = int_lin_independent(&v).unwrap() else {
            panic!("six vectors in Z^5 must be dependent");
        };
        assert_eq!(rel, vec![1, 2, 3, 4, 5, -1]);
    }
}
