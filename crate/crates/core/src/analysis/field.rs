use super::SeriesTable;
use crate::error::{positive, Error, Result};
use crate::fees::FeeRule;

fn axis(
    what: &'static str,
    (lo, hi): (f64, f64),
    resolution: usize,
) -> Result<impl Iterator<Item = f64>> {
    positive(what, lo)?;
    positive(what, hi)?;
    if hi < lo {
        return Err(Error::Invalid { what, value: hi });
    }
    let step = (hi - lo) / (resolution - 1) as f64;
    Ok((0..resolution).map(move |i| {
        if i + 1 == resolution {
            hi
        } else {
            lo + step * i as f64
        }
    }))
}

/// Samples the combined fee factor on a uniform `resolution × resolution`
/// grid over the reserve space.
///
/// Columns: `x`, `y`, `alpha`, `k` (with `k = x·y`, so level sets can be
/// compared against the invariant hyperbolas). Rows run over `y` fastest.
pub fn fee_field_grid<F: FeeRule + ?Sized>(
    rule: &F,
    x_range: (f64, f64),
    y_range: (f64, f64),
    resolution: usize,
) -> Result<SeriesTable> {
    if resolution < 2 {
        return Err(Error::Invalid {
            what: "grid resolution",
            value: resolution as f64,
        });
    }
    let mut table = SeriesTable::new("fee-field", ["x", "y", "alpha", "k"])
        .with_meta("resolution", resolution)
        .with_meta("path_independent", rule.is_path_independent());
    let ys: alloc::vec::Vec<f64> = axis("grid y range", y_range, resolution)?.collect();
    for x in axis("grid x range", x_range, resolution)? {
        for &y in &ys {
            table.push_row(&[x, y, rule.combined_factor(x, y)?, x * y])?;
        }
    }
    Ok(table)
}
