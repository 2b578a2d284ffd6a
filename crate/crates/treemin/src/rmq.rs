//! Range-minimum index over integer keys. Blocks of 64 positions answer
//! in-block queries with a stack bitmask; a sparse table covers block minima.
//! Ties resolve to the leftmost position.

const B: usize = 64;

#[derive(Clone, Debug)]
pub(crate) struct MinIndex {
    keys: Vec<u32>,
    masks: Vec<u64>,
    table: Vec<Vec<u32>>,
}

impl MinIndex {
    pub(crate) fn new(keys: Vec<u32>) -> Self {
        let n = keys.len();
        let mut masks = vec![0u64; n];
        let mut stack: Vec<usize> = Vec::with_capacity(B);
        for start in (0..n).step_by(B) {
            stack.clear();
            let mut mask = 0u64;
            for i in start..(start + B).min(n) {
                while let Some(&t) = stack.last() {
                    if keys[t] > keys[i] {
                        stack.pop();
                        mask &= !(1u64 << (t - start));
                    } else {
                        break;
                    }
                }
                stack.push(i);
                mask |= 1u64 << (i - start);
                masks[i] = mask;
            }
        }
        let blocks = n.div_ceil(B);
        let mut ix = MinIndex {
            keys,
            masks,
            table: Vec::new(),
        };
        let level0: Vec<u32> = (0..blocks)
            .map(|b| ix.in_block(b * B, ((b + 1) * B).min(n) - 1) as u32)
            .collect();
        ix.table.push(level0);
        let mut k = 1;
        while (1 << k) <= blocks {
            let prev = &ix.table[k - 1];
            let half = 1 << (k - 1);
            let row: Vec<u32> = (0..=blocks - (1 << k))
                .map(|b| ix.better(prev[b] as usize, prev[b + half] as usize) as u32)
                .collect();
            ix.table.push(row);
            k += 1;
        }
        ix
    }

    pub(crate) fn len(&self) -> usize {
        self.keys.len()
    }

    fn better(&self, a: usize, b: usize) -> usize {
        if self.keys[b] < self.keys[a] {
            b
        } else {
            a
        }
    }

    fn in_block(&self, l: usize, r: usize) -> usize {
        let start = l - l % B;
        let m = self.masks[r] & (!0u64 << (l - start));
        start + m.trailing_zeros() as usize
    }

    /// Position of the minimum key in `l..=r`.
    pub(crate) fn argmin(&self, l: usize, r: usize) -> usize {
        debug_assert!(l <= r && r < self.len());
        let (bl, br) = (l / B, r / B);
        if bl == br {
            return self.in_block(l, r);
        }
        let mut best = self.in_block(l, (bl + 1) * B - 1);
        if bl + 1 < br {
            let (a, b) = (bl + 1, br - 1);
            let k = (usize::BITS - 1 - (b - a + 1).leading_zeros()) as usize;
            let row = &self.table[k];
            best = self.better(best, row[a] as usize);
            best = self.better(best, row[b + 1 - (1 << k)] as usize);
        }
        self.better(best, self.in_block(br * B, r))
    }
}
