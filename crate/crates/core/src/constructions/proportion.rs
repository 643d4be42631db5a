use num_rational::Ratio;

/// True when `U_n` has a 2-generated subgroup of derived length
/// `⌈log₂ n⌉`, i.e. `21·2^d/32 < n ≤ 2^d`.
pub fn is_good(n: u64) -> bool {
    assert!(n >= 1);
    let d = ceil_log2(n);
    32 * n as u128 > 21u128 << d
}

fn ceil_log2(n: u64) -> u32 {
    if n <= 1 {
        0
    } else {
        64 - (n - 1).leading_zeros()
    }
}

/// Number of good `n ≤ big_n`, counted per dyadic block.
pub fn count_good(big_n: u64) -> u64 {
    let mut count = 0u64;
    for d in 0..=ceil_log2(big_n.max(1)) {
        let block_lo: u128 = if d == 0 { 1 } else { (1u128 << (d - 1)) + 1 };
        let first_good = ((21u128 << d) / 32 + 1).max(block_lo);
        let last = (1u128 << d).min(big_n as u128);
        if last >= first_good {
            count += (last - first_good + 1) as u64;
        }
    }
    count
}

/// `π(N)`, the exact proportion of good `n ≤ N`.
pub fn proportion_good(big_n: u64) -> Ratio<u64> {
    assert!(big_n >= 1, "N must be positive");
    Ratio::new(count_good(big_n), big_n)
}
