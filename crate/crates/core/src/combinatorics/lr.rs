//! Littlewood–Richardson coefficients by counting LR skew tableaux.
//!
//! `c^ν_{λμ}` is the number of semistandard fillings of the skew shape `ν/λ`
//! with content `μ` whose reverse reading word (right to left along rows, top
//! to bottom) is a lattice word. The search fills cells in reading order and
//! prunes on the lattice condition as it goes.

use super::partition::Partition;

pub fn lr_coefficient(lam: &Partition, mu: &Partition, nu: &Partition) -> u64 {
    if nu.size() != lam.size() + mu.size() || !lam.is_contained_in(nu) {
        return 0;
    }
    if mu.is_empty() {
        return 1;
    }
    // Cells of the skew shape in reading order: rows top to bottom, each row
    // right to left.
    let rows = nu.len();
    let mut cells = Vec::with_capacity(mu.size() as usize);
    for i in 0..rows {
        for c in (lam.part(i)..nu.part(i)).rev() {
            cells.push((i, c as usize));
        }
    }
    let width = nu.part(0) as usize;
    let mut search = Search {
        lam,
        nu,
        content: mu.parts().to_vec(),
        counts: vec![0; mu.len()],
        grid: vec![vec![0u32; width]; rows],
        cells,
    };
    search.count(0)
}

struct Search<'a> {
    lam: &'a Partition,
    nu: &'a Partition,
    content: Vec<u32>,
    counts: Vec<u32>,
    // letters are stored 1-based; 0 marks an unfilled or λ cell
    grid: Vec<Vec<u32>>,
    cells: Vec<(usize, usize)>,
}

impl Search<'_> {
    fn in_skew(&self, i: usize, c: usize) -> bool {
        (c as u32) >= self.lam.part(i) && (c as u32) < self.nu.part(i)
    }

    fn count(&mut self, idx: usize) -> u64 {
        if idx == self.cells.len() {
            return 1;
        }
        let (i, c) = self.cells[idx];
        // rows weakly increase left to right: bounded above by the right neighbour
        let upper = if self.in_skew(i, c + 1) {
            self.grid[i][c + 1]
        } else {
            self.content.len() as u32
        };
        // columns strictly increase downwards
        let lower = if i > 0 && self.in_skew(i - 1, c) {
            self.grid[i - 1][c] + 1
        } else {
            1
        };
        // a lattice filling never places a letter larger than its row index
        let upper = upper.min(i as u32 + 1);
        let mut total = 0;
        for letter in lower..=upper {
            let k = (letter - 1) as usize;
            if self.counts[k] >= self.content[k] {
                continue;
            }
            if k > 0 && self.counts[k] >= self.counts[k - 1] {
                continue;
            }
            self.counts[k] += 1;
            self.grid[i][c] = letter;
            total += self.count(idx + 1);
            self.grid[i][c] = 0;
            self.counts[k] -= 1;
        }
        total
    }
}
