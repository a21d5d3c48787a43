//! Snapshot files: raw little-endian `f64` arrays for `B` and `D` plus a
//! key-value sidecar describing the grid, time and run settings.

use std::collections::BTreeMap;
use std::fs;
use std::io::{BufWriter, Read, Write};
use std::path::Path;

use crate::error::{FieldError, Result};
use crate::grid::{Grid, VectorField};
use crate::solver::{FieldState, Mode};
use crate::stencil::StencilOrder;

pub const FORMAT_VERSION: u32 = 1;
pub const B_FILE: &str = "b.bin";
pub const D_FILE: &str = "d.bin";
pub const META_FILE: &str = "meta.txt";

/// Run settings recorded next to every snapshot.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SnapshotMeta {
    pub mode: Mode,
    pub order: StencilOrder,
    pub seed: u64,
}

fn write_field(path: &Path, field: &VectorField) -> Result<()> {
    let mut out = BufWriter::new(fs::File::create(path)?);
    for v in field.data() {
        out.write_all(&v.to_le_bytes())?;
    }
    out.flush()?;
    Ok(())
}

fn read_field(path: &Path, grid: Grid) -> Result<VectorField> {
    let mut bytes = Vec::new();
    fs::File::open(path)?.read_to_end(&mut bytes)?;
    let expected = 3 * grid.len() * 8;
    if bytes.len() != expected {
        return Err(FieldError::Snapshot(format!("{} has {} bytes, expected {expected}", path.display(), bytes.len())));
    }
    let data = bytes.chunks_exact(8).map(|c| f64::from_le_bytes(c.try_into().expect("chunk of 8"))).collect();
    VectorField::from_vec(grid, data)
}

/// Writes `b.bin`, `d.bin` and `meta.txt` into `dir`, creating it if needed.
pub fn write_snapshot(dir: &Path, state: &FieldState, meta: &SnapshotMeta) -> Result<()> {
    fs::create_dir_all(dir)?;
    write_field(&dir.join(B_FILE), &state.b)?;
    write_field(&dir.join(D_FILE), &state.d)?;
    let g = state.grid;
    let [ox, oy, oz] = g.origin();
    // `{:?}` prints the shortest representation that parses back to the same f64.
    let text = format!(
        "format_version={FORMAT_VERSION}\nn={}\nh={:?}\norigin={ox:?},{oy:?},{oz:?}\nt={:?}\nmode={}\norder={}\nseed={}\n",
        g.n(),
        g.h(),
        state.t,
        meta.mode.as_str(),
        meta.order.order(),
        meta.seed,
    );
    fs::write(dir.join(META_FILE), text)?;
    Ok(())
}

fn parse<T: std::str::FromStr>(map: &BTreeMap<String, String>, key: &str) -> Result<T> {
    let raw = map.get(key).ok_or_else(|| FieldError::Snapshot(format!("missing key `{key}`")))?;
    raw.parse().map_err(|_| FieldError::Snapshot(format!("bad value `{raw}` for `{key}`")))
}

/// Reads a snapshot written by [`write_snapshot`].
pub fn read_snapshot(dir: &Path) -> Result<(FieldState, SnapshotMeta)> {
    let text = fs::read_to_string(dir.join(META_FILE))?;
    let map: BTreeMap<String, String> = text
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| {
            l.split_once('=')
                .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
                .ok_or_else(|| FieldError::Snapshot(format!("line `{l}` is not key=value")))
        })
        .collect::<Result<_>>()?;
    let version: u32 = parse(&map, "format_version")?;
    if version != FORMAT_VERSION {
        return Err(FieldError::Snapshot(format!("unsupported format_version {version}")));
    }
    let origin: Vec<f64> = map
        .get("origin")
        .ok_or_else(|| FieldError::Snapshot("missing key `origin`".into()))?
        .split(',')
        .map(|s| s.trim().parse().map_err(|_| FieldError::Snapshot(format!("bad origin entry `{s}`"))))
        .collect::<Result<_>>()?;
    let origin: [f64; 3] = origin.try_into().map_err(|_| FieldError::Snapshot("origin needs three entries".into()))?;
    let grid = Grid::with_origin(parse(&map, "n")?, parse(&map, "h")?, origin)?;
    let mode_raw: String = parse(&map, "mode")?;
    let mode = Mode::parse(&mode_raw).ok_or_else(|| FieldError::Snapshot(format!("unknown mode `{mode_raw}`")))?;
    let order_raw: u32 = parse(&map, "order")?;
    let order =
        StencilOrder::from_order(order_raw).ok_or_else(|| FieldError::Snapshot(format!("unsupported order {order_raw}")))?;
    let state = FieldState { grid, t: parse(&map, "t")?, b: read_field(&dir.join(B_FILE), grid)?, d: read_field(&dir.join(D_FILE), grid)? };
    Ok((state, SnapshotMeta { mode, order, seed: parse(&map, "seed")? }))
}
