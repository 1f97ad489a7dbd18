//! Byte-deterministic writers for figures and series.

use std::io::Write;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::analysis::ScaleReport;
use crate::engine::{solve, PairTable};
use crate::error::{domain, range, Error, Result};
use crate::rules::ForbiddenSet;

/// Significant digits in every rendered decimal.
pub const DECIMAL_DIGITS: u32 = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FigureFormat {
    Pgm,
    Csv,
}

impl FromStr for FigureFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pgm" => Ok(FigureFormat::Pgm),
            "csv" => Ok(FigureFormat::Csv),
            _ => Err(domain(format!("unknown figure format '{s}' (pgm or csv)"))),
        }
    }
}

/// `z(x, y)` for all `x, y < n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FigureGrid {
    n: u32,
    values: Vec<u32>,
    zmax: u32,
}

impl FigureGrid {
    pub fn from_table(t: &PairTable, n: u32) -> Result<Self> {
        check_side(t, n)?;
        let side = n as usize;
        let mut values = vec![0; side * side];
        for x in 0..n {
            for y in 0..=x {
                let z = t.get(x, y);
                values[x as usize * side + y as usize] = z;
                values[y as usize * side + x as usize] = z;
            }
        }
        let zmax = values.iter().copied().max().unwrap_or(0);
        Ok(FigureGrid { n, values, zmax })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn zmax(&self) -> u32 {
        self.zmax
    }

    pub fn value(&self, x: u32, y: u32) -> u32 {
        self.values[x as usize * self.n as usize + y as usize]
    }

    /// Whether `(x, y)` is in `S`: `x > y > z(x, y)`.
    pub fn in_s(&self, x: u32, y: u32) -> bool {
        x > y && self.value(x, y) < y
    }

    /// For each cell `(x, y)` of the half-size grid, how many of its four
    /// preimages `(2x + i, 2y + j)` lie in `S`.
    pub fn halved_s_counts(&self) -> Vec<u8> {
        let half = self.n / 2;
        let mut out = Vec::with_capacity((half * half) as usize);
        for x in 0..half {
            for y in 0..half {
                let c = (0..4)
                    .filter(|i| self.in_s(2 * x + i / 2, 2 * y + i % 2))
                    .count();
                out.push(c as u8);
            }
        }
        out
    }
}

fn check_side(t: &PairTable, n: u32) -> Result<()> {
    if n > t.n() {
        return Err(range(format!(
            "figure side {n} exceeds the table (n = {})",
            t.n()
        )));
    }
    Ok(())
}

/// Writes the `n × n` grid of thirds. PGM rows run from `y = n - 1` down to
/// `y = 0` so the origin sits bottom-left; CSV rows run `x` outer.
pub fn emit_figure(
    t: &PairTable,
    n: u32,
    format: FigureFormat,
    sink: &mut dyn Write,
) -> Result<()> {
    check_side(t, n)?;
    let z = |x: u32, y: u32| t.get(x.max(y), x.min(y));
    match format {
        FigureFormat::Csv => {
            writeln!(sink, "x,y,z")?;
            for x in 0..n {
                for y in 0..n {
                    writeln!(sink, "{x},{y},{}", z(x, y))?;
                }
            }
        }
        FigureFormat::Pgm => {
            let zmax = (0..n)
                .flat_map(|x| (0..=x).map(move |y| (x, y)))
                .map(|(x, y)| z(x, y))
                .max();
            let zmax = zmax.unwrap_or(0).max(1) as u64;
            write!(sink, "P5\n{n} {n}\n255\n")?;
            let mut row = vec![0u8; n as usize];
            for y in (0..n).rev() {
                for x in 0..n {
                    row[x as usize] = (255 * z(x, y) as u64 / zmax) as u8;
                }
                sink.write_all(&row)?;
            }
        }
    }
    Ok(())
}

/// `x,pi,ratio` for `1 <= x <= xmax`, ratio `pi(x) / x^2`.
pub fn emit_pi_curve(f: &ForbiddenSet, xmax: u32, sink: &mut dyn Write) -> Result<()> {
    writeln!(sink, "x,pi,ratio")?;
    if xmax == 0 {
        return Ok(());
    }
    let t = solve(xmax, f)?;
    for (i, pi) in t.pi_prefix(xmax)?.into_iter().enumerate() {
        let x = i as u64 + 1;
        let ratio = BigRational::new(pi.into(), (x * x).into());
        writeln!(sink, "{x},{pi},{}", decimal(&ratio))?;
    }
    Ok(())
}

/// `k,zeta_num,zeta_den,zeta_decimal,delta`; the delta on row `k` is
/// `|zeta_k - zeta_(k-1)|`, empty on the first row.
pub fn emit_series(report: &ScaleReport, sink: &mut dyn Write) -> Result<()> {
    writeln!(sink, "k,zeta_num,zeta_den,zeta_decimal,delta")?;
    for (k, v) in report.values.iter().enumerate() {
        let delta = match k {
            0 => String::new(),
            _ => decimal(&report.deltas[k - 1]),
        };
        writeln!(
            sink,
            "{k},{},{},{},{delta}",
            v.numer(),
            v.denom(),
            decimal(v)
        )?;
    }
    Ok(())
}

/// Renders `r` to `DECIMAL_DIGITS` significant digits, rounding half away
/// from zero and dropping trailing zeros. Always has a fractional part.
pub fn decimal(r: &BigRational) -> String {
    if r.is_zero() {
        return "0.0".into();
    }
    let sign = if r.is_negative() { "-" } else { "" };
    let a = r.abs();
    let ten = BigInt::from(10);
    let int_digits = a.to_integer().to_string();

    // Number of fractional digits to keep.
    let scale: i64 = if a >= BigRational::from_integer(1.into()) {
        DECIMAL_DIGITS as i64 - int_digits.len() as i64
    } else {
        let mut zeros = 0i64;
        let mut v = a.clone();
        while v < BigRational::from_integer(1.into()) {
            v *= BigRational::from_integer(ten.clone());
            zeros += 1;
        }
        DECIMAL_DIGITS as i64 - 1 + zeros
    };

    if scale <= 0 {
        let unit = ten.pow((-scale) as u32);
        let q = round_half_up(&a / BigRational::from_integer(unit.clone()));
        return format!("{sign}{}.0", q * unit);
    }
    let scale = scale as usize;
    let digits = round_half_up(&a * BigRational::from_integer(ten.pow(scale as u32))).to_string();
    let digits = format!("{digits:0>width$}", width = scale + 1);
    let (int_part, frac) = digits.split_at(digits.len() - scale);
    let frac = frac.trim_end_matches('0');
    format!(
        "{sign}{int_part}.{}",
        if frac.is_empty() { "0" } else { frac }
    )
}

fn round_half_up(v: BigRational) -> BigInt {
    (v + BigRational::new(1.into(), 2.into()))
        .floor()
        .to_integer()
}
