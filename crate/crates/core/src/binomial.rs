//! Binomial coefficients with the boundary conventions used by face counts:
//! `C(a, b) = 0` when `b < 0`, `b > a` or `a < 0`, and `C(a, 0) = 1` for
//! every `a >= 0`.

use num_bigint::BigInt;

const ROWS: usize = 65;

static PASCAL: [[u64; ROWS]; ROWS] = {
    let mut t = [[0u64; ROWS]; ROWS];
    let mut a = 0;
    while a < ROWS {
        t[a][0] = 1;
        let mut b = 1;
        while b <= a {
            t[a][b] = t[a - 1][b - 1] + t[a - 1][b];
            b += 1;
        }
        a += 1;
    }
    t
};

/// `C(a, b)` for `a <= 64`, read from a Pascal table.
///
/// # Panics
/// If `a > 64`.
pub fn binomial(a: i64, b: i64) -> u64 {
    if a < 0 || b < 0 || b > a {
        return 0;
    }
    assert!(a < ROWS as i64, "binomial table covers a <= 64, got {a}");
    PASCAL[a as usize][b as usize]
}

/// `C(a, b)` for any arguments, exact.
pub fn binomial_big(a: i64, b: i64) -> BigInt {
    if a < 0 || b < 0 || b > a {
        return BigInt::from(0);
    }
    if a < ROWS as i64 {
        return BigInt::from(binomial(a, b));
    }
    let b = b.min(a - b);
    let mut acc = BigInt::from(1);
    for i in 0..b {
        acc *= a - i;
        acc /= i + 1;
    }
    acc
}
