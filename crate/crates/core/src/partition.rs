//! Integer partitions indexing ordered products of lowering operators.
//!
//! A partition `[4, 2, 2]` stands for the basis monomial built from modes
//! `-4, -2, -2` applied left to right. Parts are kept weakly decreasing.
//! The canonical listing order compares multiplicity vectors (how many
//! parts equal 1, equal 2, ...) lexicographically, largest first, so at
//! degree six with parts >= 2 the order is `[2,2,2], [4,2], [3,3], [6]`.

pub type Partition = Vec<u32>;

/// All partitions of `n` into parts `>= min_part`, canonically ordered.
pub fn partitions(n: u32, min_part: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    gen(n, n, min_part, &mut cur, &mut out);
    out.sort_by(|a, b| mult_key(b, n).cmp(&mult_key(a, n)));
    out
}

fn gen(n: u32, max_next: u32, min_part: u32, cur: &mut Partition, out: &mut Vec<Partition>) {
    if n == 0 {
        out.push(cur.clone());
        return;
    }
    let hi = n.min(max_next);
    if hi < min_part {
        return;
    }
    for k in (min_part..=hi).rev() {
        cur.push(k);
        gen(n - k, k, min_part, cur, out);
        cur.pop();
    }
}

/// Multiplicity vector: entry `i` counts parts equal to `i + 1`.
pub fn mult_key(p: &Partition, max_part: u32) -> Vec<u16> {
    let mut key = vec![0u16; max_part as usize];
    for &part in p {
        key[(part - 1) as usize] += 1;
    }
    key
}

/// Number of partitions of `n` into parts `>= min_part`, by dynamic
/// programming; serves as an independent oracle for `partitions`.
pub fn count(n: u32, min_part: u32) -> u64 {
    let n = n as usize;
    let mut dp = vec![0u64; n + 1];
    dp[0] = 1;
    for part in (min_part as usize)..=n.max(1) {
        if part > n {
            break;
        }
        for total in part..=n {
            dp[total] += dp[total - part];
        }
    }
    dp[n]
}
