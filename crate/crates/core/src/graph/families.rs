use super::Family;

/// Integer on the line carried by vertex index `k`.
pub fn line_value(k: u64) -> i64 {
    match k {
        1 => 0,
        k if k % 2 == 0 => (k / 2) as i64,
        k => -(((k - 1) / 2) as i64),
    }
}

/// Inverse of [`line_value`].
pub fn line_index(z: i64) -> u64 {
    match z {
        0 => 1,
        z if z > 0 => 2 * z as u64,
        z => 2 * z.unsigned_abs() + 1,
    }
}

/// Lattice point carried by spiral index `k`.
pub fn grid_coords(k: u64) -> (i64, i64) {
    if k == 1 {
        return (0, 0);
    }
    let mut s = k.isqrt();
    if s * s < k {
        s += 1;
    }
    let r = s / 2;
    let t = k - (2 * r - 1).pow(2) - 1;
    let (side, pos) = (t / (2 * r), (t % (2 * r)) as i64);
    let r = r as i64;
    match side {
        0 => (r, 1 - r + pos),
        1 => (r - 1 - pos, r),
        2 => (-r, r - 1 - pos),
        _ => (1 - r + pos, -r),
    }
}

/// Inverse of [`grid_coords`].
pub fn grid_index(x: i64, y: i64) -> u64 {
    let r = x.abs().max(y.abs());
    if r == 0 {
        return 1;
    }
    let t = if x == r && y > -r {
        y + r - 1
    } else if y == r {
        2 * r + (r - 1 - x)
    } else if x == -r {
        4 * r + (r - 1 - y)
    } else {
        6 * r + (x + r - 1)
    };
    ((2 * r - 1).pow(2) + 1 + t) as u64
}

/// Raw neighbour indices of `v_k` in a builtin infinite family.
pub(super) fn neighbors(family: Family, k: u64) -> Vec<u64> {
    match family {
        Family::Ray if k == 1 => vec![2],
        Family::Ray => vec![k - 1, k + 1],
        Family::Line => {
            let z = line_value(k);
            vec![line_index(z - 1), line_index(z + 1)]
        }
        Family::BinaryTree => {
            let mut out = Vec::with_capacity(3);
            if k > 1 {
                out.push(k / 2);
            }
            out.extend([2 * k, 2 * k + 1]);
            out
        }
        Family::Grid2d => {
            let (x, y) = grid_coords(k);
            vec![
                grid_index(x + 1, y),
                grid_index(x, y + 1),
                grid_index(x - 1, y),
                grid_index(x, y - 1),
            ]
        }
        Family::Caterpillar if k == 1 => vec![2, 3],
        Family::Caterpillar if k % 2 == 1 => vec![k - 2, k + 1, k + 2],
        Family::Caterpillar => vec![k - 1],
        Family::Finite => unreachable!("finite graphs store their adjacency"),
    }
}
