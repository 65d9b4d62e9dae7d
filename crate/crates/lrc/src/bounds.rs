//! Length and rate bounds for related code families, and the two summary
//! tables comparing them with this construction.
//!
//! All bounds are computed with exact integer and rational arithmetic;
//! the table renderers are deterministic so their output can be frozen
//! in golden files.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

/// Bounds for codes with locality r, dimension k, and erasure tolerance t,
/// all derived from closed-form rate or length inequalities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundsRow {
    pub r: u64,
    pub t: u64,
    pub k: u64,
    /// Length of this construction when (t, k) fit it, i.e. t = 2^m − 1
    /// and k = r^m for some m; absent otherwise.
    pub n_construction: Option<u64>,
    /// Minimum length of a code repairing t erasures in parallel
    /// (equivalently, of cooperative or (r, t+1)-locality codes):
    /// ⌈k(r+t)/r⌉, from the rate bound k/n ≤ r/(r+t).
    pub n_min_parallel: u64,
    /// Rate upper bound for codes with locality r and availability t:
    /// ∏_{j=1..t} jr/(jr+1), exact.
    pub availability_rate_bound: BigRational,
    /// Minimum length for tolerance 2: ⌈k(r+2)/r⌉.
    pub n_min_t2: u64,
    /// Minimum length for tolerance 3: k + ⌈(2k + ⌈k/r⌉)/r⌉.
    pub n_min_t3: u64,
}

/// Evaluates every bound formula at (r, t, k). Fields whose formula does
/// not depend on t are computed regardless; the caller picks what applies.
pub fn bounds_row(r: u64, t: u64, k: u64) -> BoundsRow {
    assert!(r >= 1 && t >= 1 && k >= 1, "bounds need positive r, t, k");
    let ceil_frac = |num: u128, den: u128| -> u64 {
        num.div_ceil(den).try_into().expect("bound fits in u64")
    };
    let n_construction = t
        .checked_add(1)
        .filter(|s| s.is_power_of_two())
        .and_then(|s| {
            let m = s.trailing_zeros();
            if r.checked_pow(m) == Some(k) {
                (r + 1).checked_pow(m)
            } else {
                None
            }
        });
    let mut availability_rate_bound = BigRational::one();
    for j in 1..=t {
        let jr = BigInt::from(j) * BigInt::from(r);
        availability_rate_bound *= BigRational::new(jr.clone(), jr + 1);
    }
    BoundsRow {
        r,
        t,
        k,
        n_construction,
        n_min_parallel: ceil_frac(k as u128 * (r + t) as u128, r as u128),
        availability_rate_bound,
        n_min_t2: ceil_frac(k as u128 * (r + 2) as u128, r as u128),
        n_min_t3: k + ceil_frac(2 * k as u128 + k.div_ceil(r) as u128, r as u128),
    }
}

/// Code-length comparison at r = 2: this construction against the
/// parallel-repair length bound for (r, t+1)-locality codes and for
/// cooperative codes (the two coincide).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Table1Row {
    pub m: u32,
    pub t: u64,
    pub k: u64,
    pub n_product: u64,
    pub n_min_delta_locality: u64,
    pub n_min_cooperative: u64,
}

/// The four r = 2 comparison rows, m = 2..=5.
pub fn table1() -> Vec<Table1Row> {
    (2..=5)
        .map(|m| {
            let t = (1u64 << m) - 1;
            let k = 1u64 << m;
            let row = bounds_row(2, t, k);
            Table1Row {
                m,
                t,
                k,
                n_product: row.n_construction.expect("t and k fit the construction"),
                n_min_delta_locality: row.n_min_parallel,
                n_min_cooperative: row.n_min_parallel,
            }
        })
        .collect()
}

/// Erasure tolerance of this construction at r = 2: sequential repair
/// reaches 2^m − 1 while parallel repair reaches m.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Table2Row {
    pub m: u32,
    pub k: u64,
    pub n: u64,
    pub sequential_tolerance: u64,
    pub parallel_tolerance: u32,
}

/// The four r = 2 tolerance rows, m = 2..=5.
pub fn table2() -> Vec<Table2Row> {
    (2..=5)
        .map(|m| Table2Row {
            m,
            k: 1u64 << m,
            n: 3u64.pow(m),
            sequential_tolerance: (1u64 << m) - 1,
            parallel_tolerance: m,
        })
        .collect()
}

/// Right-justifies columns to their widest cell, two spaces between
/// columns, one row per line.
fn align(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.len()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let mut out = String::new();
    let mut emit = |cells: &[String]| {
        for (i, (cell, w)) in cells.iter().zip(&widths).enumerate() {
            if i > 0 {
                out.push_str("  ");
            }
            out.push_str(&" ".repeat(w - cell.len()));
            out.push_str(cell);
        }
        out.push('\n');
    };
    emit(&headers.iter().map(|h| h.to_string()).collect::<Vec<_>>());
    for row in rows {
        emit(row);
    }
    out
}

const TABLE1_HEADERS: [&str; 6] = ["m", "t", "k", "product", "delta_locality", "cooperative"];
const TABLE2_HEADERS: [&str; 5] = ["m", "k", "n", "sequential", "parallel"];

/// Aligned text form of [`table1`]; bound columns carry a `>=` prefix.
pub fn table1_text() -> String {
    let rows: Vec<Vec<String>> = table1()
        .iter()
        .map(|row| {
            vec![
                row.m.to_string(),
                row.t.to_string(),
                row.k.to_string(),
                row.n_product.to_string(),
                format!(">={}", row.n_min_delta_locality),
                format!(">={}", row.n_min_cooperative),
            ]
        })
        .collect();
    align(&TABLE1_HEADERS, &rows)
}

/// Comma-separated form of [`table1`], plain numbers.
pub fn table1_csv() -> String {
    let mut out = TABLE1_HEADERS.join(",");
    out.push('\n');
    for row in table1() {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            row.m, row.t, row.k, row.n_product, row.n_min_delta_locality, row.n_min_cooperative
        ));
    }
    out
}

/// Aligned text form of [`table2`].
pub fn table2_text() -> String {
    let rows: Vec<Vec<String>> = table2()
        .iter()
        .map(|row| {
            vec![
                row.m.to_string(),
                row.k.to_string(),
                row.n.to_string(),
                row.sequential_tolerance.to_string(),
                row.parallel_tolerance.to_string(),
            ]
        })
        .collect();
    align(&TABLE2_HEADERS, &rows)
}

/// Comma-separated form of [`table2`].
pub fn table2_csv() -> String {
    let mut out = TABLE2_HEADERS.join(",");
    out.push('\n');
    for row in table2() {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            row.m, row.k, row.n, row.sequential_tolerance, row.parallel_tolerance
        ));
    }
    out
}
