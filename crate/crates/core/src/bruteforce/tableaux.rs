//! Littlewood–Richardson tableaux by exhaustive filling.

use crate::partition::Partition;

/// Number of semistandard fillings of the skew shape outer/inner with
/// content `content` whose reverse reading word is a lattice word.
pub fn lr_tableaux_count(inner: &Partition, content: &Partition, outer: &Partition) -> u64 {
    if inner.weight() + content.weight() != outer.weight()
        || inner.len() > outer.len()
        || inner.parts().iter().zip(outer.parts()).any(|(a, b)| a > b)
    {
        return 0;
    }
    let rows = outer.len();
    let lo: Vec<usize> = (0..rows).map(|i| inner.parts().get(i).copied().unwrap_or(0)).collect();
    let hi = outer.parts().to_vec();
    // Cells in reading order: rows top to bottom, each right to left.
    let cells: Vec<(usize, usize)> = (0..rows).flat_map(|i| (lo[i]..hi[i]).rev().map(move |j| (i, j))).collect();
    let mut grid: Vec<Vec<usize>> = hi.iter().map(|&w| vec![0; w]).collect();
    let mut used = vec![0usize; content.len()];

    fn go(
        pos: usize,
        cells: &[(usize, usize)],
        lo: &[usize],
        grid: &mut [Vec<usize>],
        used: &mut [usize],
        content: &[usize],
    ) -> u64 {
        let Some(&(i, j)) = cells.get(pos) else {
            return 1;
        };
        let mut total = 0;
        for v in 1..=content.len() {
            if used[v - 1] == content[v - 1] {
                continue;
            }
            // lattice: after placing v, #v must not exceed #(v-1)
            if v > 1 && used[v - 1] + 1 > used[v - 2] {
                continue;
            }
            // rows weakly increase left to right; the cell to the right is
            // already filled
            if j + 1 < grid[i].len() && v > grid[i][j + 1] {
                continue;
            }
            // columns strictly increase downwards
            if i > 0 && j >= lo[i - 1] && j < grid[i - 1].len() && v <= grid[i - 1][j] {
                continue;
            }
            grid[i][j] = v;
            used[v - 1] += 1;
            total += go(pos + 1, cells, lo, grid, used, content);
            used[v - 1] -= 1;
            grid[i][j] = 0;
        }
        total
    }

    go(0, &cells, &lo, &mut grid, &mut used, content.parts())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn small_coefficients() {
        assert_eq!(lr_tableaux_count(&p("1"), &p("1"), &p("2")), 1);
        assert_eq!(lr_tableaux_count(&p("1"), &p("1"), &p("1,1")), 1);
        assert_eq!(lr_tableaux_count(&p("2,1"), &p("2,1"), &p("3,2,1")), 2);
        assert_eq!(lr_tableaux_count(&p("2"), &p("2"), &p("2,2")), 1);
        assert_eq!(lr_tableaux_count(&p("2"), &p("1,1"), &p("2,2")), 0);
        assert_eq!(lr_tableaux_count(&p("3"), &p("1"), &p("2,2")), 0);
        assert_eq!(lr_tableaux_count(&Partition::empty(), &p("2,1"), &p("2,1")), 1);
    }
}
