//! Synthetic voxel-shape world: procedural prompts, target rasterization,
//! token decoding, orthographic multi-view rendering, and voxel-to-mesh
//! conversion.
//!
//! Conventions committed here and relied on by every downstream test:
//!
//! - grid raster order is `index = x + n*y + n^2*z` (x fastest),
//! - the `+axis` view looks toward `-axis`; a ray enters at the maximum
//!   coordinate and the pixel takes the first occupied cell's color,
//! - pixel `(0, 0)` sits at the minimum corner of the two remaining axes,
//! - cell colors are classes `1..=C` (0 = empty), mapped to RGB through a
//!   fixed palette when meshing.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::meshsample::{Face, Mesh, Texture};
use crate::rng::{hash_parts, RngStream};
use crate::{Error, Result};

/// Default grid side; M = n^3 = 64 cells.
pub const DEFAULT_SIDE: usize = 4;
/// Default number of color classes.
pub const DEFAULT_COLORS: u8 = 7;

/// Fixed RGB palette for color classes 1..=7.
pub const PALETTE: [[u8; 3]; 7] = [
    [255, 0, 0],
    [0, 255, 0],
    [0, 0, 255],
    [255, 255, 0],
    [255, 0, 255],
    [0, 255, 255],
    [255, 255, 255],
];

const COLOR_NAMES: [&str; 7] = ["red", "green", "blue", "yellow", "magenta", "cyan", "white"];

const PART_NAMES: [&str; 6] = ["base", "body", "arm", "cap", "fin", "knob"];

/// Shape family of a procedural prompt.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Box,
    Ell,
    Plus,
    Pillar,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::Box, Family::Ell, Family::Plus, Family::Pillar];

    fn tag(self) -> u64 {
        match self {
            Family::Box => 0,
            Family::Ell => 1,
            Family::Plus => 2,
            Family::Pillar => 3,
        }
    }

    fn name(self) -> &'static str {
        match self {
            Family::Box => "box",
            Family::Ell => "ell",
            Family::Plus => "plus",
            Family::Pillar => "pillar",
        }
    }
}

/// Prompt difficulty, controlling extent ranges and part counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Difficulty {
    Easy,
    Medium,
    Hard,
}

impl Difficulty {
    pub const ALL: [Difficulty; 3] = [Difficulty::Easy, Difficulty::Medium, Difficulty::Hard];

    pub fn name(self) -> &'static str {
        match self {
            Difficulty::Easy => "easy",
            Difficulty::Medium => "medium",
            Difficulty::Hard => "hard",
        }
    }
}

/// Axis-aligned cell box with inclusive bounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellBox {
    pub min: [usize; 3],
    pub max: [usize; 3],
}

impl CellBox {
    pub fn contains(&self, x: usize, y: usize, z: usize) -> bool {
        x >= self.min[0]
            && x <= self.max[0]
            && y >= self.min[1]
            && y <= self.max[1]
            && z >= self.min[2]
            && z <= self.max[2]
    }
}

/// Named component of a prompt with its grid region and how many target
/// cells fall inside it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Part {
    pub name: String,
    pub region: CellBox,
    pub expected_count: usize,
}

/// Structured stand-in for a text prompt: a shape family, extents, a color
/// class, and a component list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PromptSpec {
    pub id: u64,
    pub family: Family,
    pub extents: [usize; 3],
    pub color_class: u8,
    pub parts: Vec<Part>,
    pub digest: u64,
}

impl PromptSpec {
    /// Recompute the digest from every other field.
    pub fn compute_digest(&self) -> u64 {
        let mut parts = vec![
            self.id,
            self.family.tag(),
            self.extents[0] as u64,
            self.extents[1] as u64,
            self.extents[2] as u64,
            self.color_class as u64,
            self.parts.len() as u64,
        ];
        for p in &self.parts {
            parts.push(hash_parts(
                &p.name.bytes().map(|b| b as u64).collect::<Vec<_>>(),
            ));
            for d in 0..3 {
                parts.push(p.region.min[d] as u64);
                parts.push(p.region.max[d] as u64);
            }
            parts.push(p.expected_count as u64);
        }
        hash_parts(&parts)
    }

    /// Check invariants against a grid of side `n`.
    pub fn validate(&self, n: usize, colors: u8) -> Result<()> {
        for (d, &e) in self.extents.iter().enumerate() {
            if e < 1 || e > n {
                return Err(Error::Config(format!(
                    "prompt {}: extent[{d}] = {e} outside [1, {n}]",
                    self.id
                )));
            }
        }
        if self.color_class < 1 || self.color_class > colors {
            return Err(Error::Config(format!(
                "prompt {}: color class {} outside [1, {colors}]",
                self.id, self.color_class
            )));
        }
        for p in &self.parts {
            for d in 0..3 {
                if p.region.min[d] > p.region.max[d] || p.region.max[d] >= n {
                    return Err(Error::Config(format!(
                        "prompt {}: part {} region outside the {n}^3 grid",
                        self.id, p.name
                    )));
                }
            }
            if p.expected_count < 1 {
                return Err(Error::Config(format!(
                    "prompt {}: part {} expects no cells",
                    self.id, p.name
                )));
            }
        }
        if self.digest != self.compute_digest() {
            return Err(Error::Config(format!("prompt {}: stale digest", self.id)));
        }
        Ok(())
    }
}

impl fmt::Display for PromptSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let color = COLOR_NAMES
            .get(self.color_class as usize - 1)
            .copied()
            .unwrap_or("colored");
        write!(
            f,
            "a {color} {} of extents {}x{}x{}",
            self.family.name(),
            self.extents[0],
            self.extents[1],
            self.extents[2]
        )?;
        if !self.parts.is_empty() {
            write!(f, " with")?;
            for (i, p) in self.parts.iter().enumerate() {
                let sep = if i == 0 { " " } else { ", " };
                write!(f, "{sep}{} x{}", p.name, p.expected_count)?;
            }
        }
        Ok(())
    }
}

/// Dense colored occupancy grid of side `n`; cell 0 = empty.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VoxelShape {
    pub side: usize,
    pub cells: Vec<u8>,
}

impl VoxelShape {
    pub fn empty(side: usize) -> Self {
        Self { side, cells: vec![0; side * side * side] }
    }

    #[inline]
    pub fn index(&self, x: usize, y: usize, z: usize) -> usize {
        x + self.side * y + self.side * self.side * z
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize, z: usize) -> u8 {
        self.cells[self.index(x, y, z)]
    }

    #[inline]
    pub fn set(&mut self, x: usize, y: usize, z: usize, color: u8) {
        let i = self.index(x, y, z);
        self.cells[i] = color;
    }

    pub fn cell_count(&self) -> usize {
        self.cells.len()
    }

    pub fn occupied_count(&self) -> usize {
        self.cells.iter().filter(|&&c| c != 0).count()
    }

    /// Occupied cell coordinates in raster-index order.
    pub fn occupied_cells(&self) -> Vec<[usize; 3]> {
        let n = self.side;
        let mut out = Vec::new();
        for z in 0..n {
            for y in 0..n {
                for x in 0..n {
                    if self.get(x, y, z) != 0 {
                        out.push([x, y, z]);
                    }
                }
            }
        }
        out
    }

    /// Inverse of `decode_tokens`.
    pub fn encode(&self) -> Vec<u16> {
        self.cells.iter().map(|&c| c as u16).collect()
    }
}

/// View direction for orthographic rendering.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ViewAxis {
    PosX,
    NegX,
    PosY,
    NegY,
    PosZ,
    NegZ,
}

impl ViewAxis {
    pub const ALL: [ViewAxis; 6] = [
        ViewAxis::PosX,
        ViewAxis::NegX,
        ViewAxis::PosY,
        ViewAxis::NegY,
        ViewAxis::PosZ,
        ViewAxis::NegZ,
    ];
}

/// One orthographic projection; `pixels[u + n*v]`, pixel (0,0) at the
/// minimum corner of the two remaining axes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct View {
    pub axis: ViewAxis,
    pub side: usize,
    pub pixels: Vec<u8>,
}

impl View {
    pub fn pixel(&self, u: usize, v: usize) -> u8 {
        self.pixels[u + self.side * v]
    }

    pub fn nonzero_pixels(&self) -> usize {
        self.pixels.iter().filter(|&&p| p != 0).count()
    }
}

/// Draw a procedural prompt. The stream advances, so repeated calls give
/// different prompts and replaying the stream gives identical ones.
pub fn sample_prompt(
    stream: &mut RngStream,
    difficulty: Difficulty,
    id: u64,
    n: usize,
    colors: u8,
) -> PromptSpec {
    let (ext_lo, ext_hi, parts_lo, parts_hi) = match difficulty {
        Difficulty::Easy => (1, n.div_ceil(2), 0, 1),
        Difficulty::Medium => (1, n, 1, 2),
        Difficulty::Hard => (2.min(n), n, 2, 3),
    };
    let family = Family::ALL[stream.next_range(0, 3) as usize];
    let extents = [
        stream.next_range(ext_lo as u64, ext_hi as u64) as usize,
        stream.next_range(ext_lo as u64, ext_hi as u64) as usize,
        stream.next_range(ext_lo as u64, ext_hi as u64) as usize,
    ];
    let color_class = stream.next_range(1, colors as u64) as u8;

    let mut spec = PromptSpec {
        id,
        family,
        extents,
        color_class,
        parts: Vec::new(),
        digest: 0,
    };
    let target = rasterize_prompt(&spec, n);
    let occupied = target.occupied_cells();

    let num_parts = stream.next_range(parts_lo, parts_hi) as usize;
    for k in 0..num_parts {
        let anchor = occupied[stream.next_range(0, occupied.len() as u64 - 1) as usize];
        let mut min = [0usize; 3];
        let mut max = [0usize; 3];
        for d in 0..3 {
            let h = stream.next_range(0, 1) as usize;
            min[d] = anchor[d].saturating_sub(h);
            max[d] = (anchor[d] + h).min(n - 1);
        }
        let region = CellBox { min, max };
        let expected_count = occupied
            .iter()
            .filter(|c| region.contains(c[0], c[1], c[2]))
            .count();
        spec.parts.push(Part {
            name: format!("{}{}", PART_NAMES[k % PART_NAMES.len()], k),
            region,
            expected_count,
        });
    }
    spec.digest = spec.compute_digest();
    spec
}

/// Deterministic target shape for a prompt, anchored at the origin corner.
///
/// Occupancy rules per family with extents `(ex, ey, ez)`:
/// - box: the full `ex x ey x ez` block,
/// - ell: an x-arm of length `ex` and a y-arm of length `ey` crossing at
///   the origin, extruded over `z < ez` ((ex + ey - 1) * ez cells),
/// - plus: an x-arm at `y = ey/2` and a y-arm at `x = ex/2`, extruded
///   ((ex + ey - 1) * ez cells),
/// - pillar: a 1x1 shaft up `z < ez` at the origin plus an `ex x ey` cap at
///   `z = ez - 1` (ex * ey + ez - 1 cells).
pub fn rasterize_prompt(spec: &PromptSpec, n: usize) -> VoxelShape {
    let [ex, ey, ez] = spec.extents;
    let mut shape = VoxelShape::empty(n);
    let c = spec.color_class;
    match spec.family {
        Family::Box => {
            for z in 0..ez {
                for y in 0..ey {
                    for x in 0..ex {
                        shape.set(x, y, z, c);
                    }
                }
            }
        }
        Family::Ell => {
            for z in 0..ez {
                for x in 0..ex {
                    shape.set(x, 0, z, c);
                }
                for y in 0..ey {
                    shape.set(0, y, z, c);
                }
            }
        }
        Family::Plus => {
            let cy = ey / 2;
            let cx = ex / 2;
            for z in 0..ez {
                for x in 0..ex {
                    shape.set(x, cy, z, c);
                }
                for y in 0..ey {
                    shape.set(cx, y, z, c);
                }
            }
        }
        Family::Pillar => {
            for z in 0..ez {
                shape.set(0, 0, z, c);
            }
            for y in 0..ey {
                for x in 0..ex {
                    shape.set(x, y, ez - 1, c);
                }
            }
        }
    }
    shape
}

/// Decode a token list into a shape; `cells[x + n*y + n^2*z] = token`.
pub fn decode_tokens(tokens: &[u16], n: usize, colors: u8) -> Result<VoxelShape> {
    let m = n * n * n;
    if tokens.len() != m {
        return Err(Error::Decode(format!(
            "expected {m} tokens for side {n}, got {}",
            tokens.len()
        )));
    }
    let mut cells = Vec::with_capacity(m);
    for (i, &t) in tokens.iter().enumerate() {
        if t > colors as u16 {
            return Err(Error::Decode(format!(
                "token {t} at position {i} outside [0, {colors}]"
            )));
        }
        cells.push(t as u8);
    }
    Ok(VoxelShape { side: n, cells })
}

/// Render the six orthographic views in `ViewAxis::ALL` order.
pub fn render_views(shape: &VoxelShape) -> [View; 6] {
    ViewAxis::ALL.map(|axis| render_view(shape, axis))
}

fn render_view(shape: &VoxelShape, axis: ViewAxis) -> View {
    let n = shape.side;
    let mut pixels = vec![0u8; n * n];
    for v in 0..n {
        for u in 0..n {
            pixels[u + n * v] = cast_ray(shape, axis, u, v);
        }
    }
    View { axis, side: n, pixels }
}

fn cast_ray(shape: &VoxelShape, axis: ViewAxis, u: usize, v: usize) -> u8 {
    let n = shape.side;
    let fwd: Box<dyn Iterator<Item = usize>> = match axis {
        ViewAxis::PosX | ViewAxis::PosY | ViewAxis::PosZ => Box::new((0..n).rev()),
        _ => Box::new(0..n),
    };
    for w in fwd {
        let color = match axis {
            ViewAxis::PosX | ViewAxis::NegX => shape.get(w, u, v),
            ViewAxis::PosY | ViewAxis::NegY => shape.get(u, w, v),
            ViewAxis::PosZ | ViewAxis::NegZ => shape.get(u, v, w),
        };
        if color != 0 {
            return color;
        }
    }
    0
}

/// Convert a shape to a triangle mesh of exposed cube faces.
///
/// Faces between two occupied cells are omitted; each exposed face becomes
/// two triangles whose UVs sit at the center of the palette texel for the
/// cell's color class.
pub fn voxels_to_mesh(shape: &VoxelShape, cell_size: f64) -> Mesh {
    let n = shape.side;
    let colors = PALETTE.len();
    let mut rgb = Vec::with_capacity(3 * colors);
    for p in PALETTE {
        rgb.extend_from_slice(&p);
    }
    let texture = Texture::new(colors, 1, rgb).expect("palette texture");

    let mut vertices = Vec::new();
    let mut uvs = Vec::new();
    let mut faces = Vec::new();

    // direction, axis handled, and the quad corners of the face at the
    // positive side of the axis (offsets in cell units)
    const DIRS: [([i64; 3], [[f64; 3]; 4]); 6] = [
        // +x
        ([1, 0, 0], [[1., 0., 0.], [1., 1., 0.], [1., 1., 1.], [1., 0., 1.]]),
        // -x
        ([-1, 0, 0], [[0., 0., 0.], [0., 0., 1.], [0., 1., 1.], [0., 1., 0.]]),
        // +y
        ([0, 1, 0], [[0., 1., 0.], [0., 1., 1.], [1., 1., 1.], [1., 1., 0.]]),
        // -y
        ([0, -1, 0], [[0., 0., 0.], [1., 0., 0.], [1., 0., 1.], [0., 0., 1.]]),
        // +z
        ([0, 0, 1], [[0., 0., 1.], [1., 0., 1.], [1., 1., 1.], [0., 1., 1.]]),
        // -z
        ([0, 0, -1], [[0., 0., 0.], [0., 1., 0.], [1., 1., 0.], [1., 0., 0.]]),
    ];

    for z in 0..n {
        for y in 0..n {
            for x in 0..n {
                let color = shape.get(x, y, z);
                if color == 0 {
                    continue;
                }
                for (delta, quad) in DIRS {
                    let nx = x as i64 + delta[0];
                    let ny = y as i64 + delta[1];
                    let nz = z as i64 + delta[2];
                    let covered = nx >= 0
                        && ny >= 0
                        && nz >= 0
                        && (nx as usize) < n
                        && (ny as usize) < n
                        && (nz as usize) < n
                        && shape.get(nx as usize, ny as usize, nz as usize) != 0;
                    if covered {
                        continue;
                    }
                    let base = vertices.len();
                    for corner in quad {
                        vertices.push([
                            (x as f64 + corner[0]) * cell_size,
                            (y as f64 + corner[1]) * cell_size,
                            (z as f64 + corner[2]) * cell_size,
                        ]);
                    }
                    let uv_index = uvs.len();
                    uvs.push([(color as f64 - 0.5) / colors as f64, 0.5]);
                    faces.push(Face {
                        corners: [(base, uv_index), (base + 1, uv_index), (base + 2, uv_index)],
                    });
                    faces.push(Face {
                        corners: [(base, uv_index), (base + 2, uv_index), (base + 3, uv_index)],
                    });
                }
            }
        }
    }

    Mesh { vertices, uvs, faces, texture }
}

/// RGB bytes for a color class via the fixed palette.
pub fn palette_color(class: u8) -> [u8; 3] {
    PALETTE[(class as usize - 1) % PALETTE.len()]
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn bare_spec(family: Family, extents: [usize; 3], color: u8) -> PromptSpec {
        let mut s = PromptSpec {
            id: 0,
            family,
            extents,
            color_class: color,
            parts: Vec::new(),
            digest: 0,
        };
        s.digest = s.compute_digest();
        s
    }

    #[test]
    fn sampling_is_deterministic_and_advances() {
        let mut a = RngStream::from_key(&[0]);
        let mut b = RngStream::from_key(&[0]);
        let s1 = sample_prompt(&mut a, Difficulty::Easy, 7, 4, 7);
        let s2 = sample_prompt(&mut b, Difficulty::Easy, 7, 4, 7);
        assert_eq!(s1, s2);
        s1.validate(4, 7).unwrap();
        let s3 = sample_prompt(&mut a, Difficulty::Easy, 8, 4, 7);
        assert_ne!(s1.compute_digest(), s3.compute_digest());
    }

    #[test]
    fn families_appear_and_hard_has_parts() {
        for difficulty in Difficulty::ALL {
            let mut stream = RngStream::from_key(&[42, difficulty as u64]);
            let mut seen = [false; 4];
            let mut part_total = 0usize;
            let draws = 10_000;
            for i in 0..draws {
                let spec = sample_prompt(&mut stream, difficulty, i, 4, 7);
                spec.validate(4, 7).unwrap();
                seen[spec.family.tag() as usize] = true;
                part_total += spec.parts.len();
            }
            assert!(seen.iter().all(|&s| s), "{difficulty:?}: missing family");
            if difficulty == Difficulty::Hard {
                let avg = part_total as f64 / draws as f64;
                assert!(avg >= 2.0, "hard average parts = {avg}");
            }
        }
    }

    #[test]
    fn full_box_fills_grid() {
        let spec = bare_spec(Family::Box, [4, 4, 4], 3);
        let shape = rasterize_prompt(&spec, 4);
        assert_eq!(shape.occupied_count(), 64);
        assert!(shape.cells.iter().all(|&c| c == 3));
    }

    #[test]
    fn unit_box_occupies_origin() {
        let spec = bare_spec(Family::Box, [1, 1, 1], 5);
        let shape = rasterize_prompt(&spec, 4);
        assert_eq!(shape.occupied_count(), 1);
        assert_eq!(shape.get(0, 0, 0), 5);
    }

    #[test]
    fn ell_cell_count_matches_rule() {
        // (ex + ey - 1) * ez
        let spec = bare_spec(Family::Ell, [3, 2, 1], 2);
        assert_eq!(rasterize_prompt(&spec, 4).occupied_count(), 4);
        let spec = bare_spec(Family::Ell, [4, 3, 2], 2);
        assert_eq!(rasterize_prompt(&spec, 4).occupied_count(), 12);
    }

    #[test]
    fn plus_and_pillar_counts_match_rules() {
        let spec = bare_spec(Family::Plus, [3, 3, 2], 1);
        assert_eq!(rasterize_prompt(&spec, 4).occupied_count(), (3 + 3 - 1) * 2);
        let spec = bare_spec(Family::Pillar, [2, 2, 3], 1);
        assert_eq!(rasterize_prompt(&spec, 4).occupied_count(), 2 * 2 + 3 - 1);
    }

    #[test]
    fn part_regions_hit_the_target() {
        let mut stream = RngStream::from_key(&[5]);
        for i in 0..500 {
            let spec = sample_prompt(&mut stream, Difficulty::Hard, i, 4, 7);
            let target = rasterize_prompt(&spec, 4);
            for part in &spec.parts {
                let hit = target
                    .occupied_cells()
                    .iter()
                    .any(|c| part.region.contains(c[0], c[1], c[2]));
                assert!(hit, "part {} misses target", part.name);
                assert!(part.expected_count >= 1);
            }
        }
    }

    #[test]
    fn decode_rejects_bad_input() {
        assert!(decode_tokens(&[0; 63], 4, 7).is_err());
        let mut tokens = vec![0u16; 64];
        tokens[10] = 8;
        assert!(decode_tokens(&tokens, 4, 7).is_err());
    }

    #[test]
    fn decode_places_tokens_in_raster_order() {
        let mut tokens = vec![0u16; 64];
        tokens[0] = 3;
        let shape = decode_tokens(&tokens, 4, 7).unwrap();
        assert_eq!(shape.get(0, 0, 0), 3);
        assert_eq!(shape.occupied_count(), 1);

        let mut tokens = vec![0u16; 64];
        tokens[1 + 4 * 2 + 16 * 3] = 6;
        let shape = decode_tokens(&tokens, 4, 7).unwrap();
        assert_eq!(shape.get(1, 2, 3), 6);
    }

    proptest! {
        #[test]
        fn decode_encode_round_trips(tokens in proptest::collection::vec(0u16..=7, 64)) {
            let shape = decode_tokens(&tokens, 4, 7).unwrap();
            prop_assert_eq!(shape.encode(), tokens);
        }
    }

    #[test]
    fn empty_shape_renders_blank() {
        let views = render_views(&VoxelShape::empty(4));
        for v in views {
            assert_eq!(v.nonzero_pixels(), 0);
        }
    }

    #[test]
    fn single_cell_shows_in_every_view() {
        let mut shape = VoxelShape::empty(4);
        shape.set(0, 0, 0, 3);
        for v in render_views(&shape) {
            assert_eq!(v.nonzero_pixels(), 1);
            assert!(v.pixels.contains(&3));
        }
    }

    #[test]
    fn ray_order_respects_view_direction() {
        let mut shape = VoxelShape::empty(4);
        shape.set(1, 1, 0, 2); // low
        shape.set(1, 1, 1, 5); // high
        let views = render_views(&shape);
        let posz = views.iter().find(|v| v.axis == ViewAxis::PosZ).unwrap();
        let negz = views.iter().find(|v| v.axis == ViewAxis::NegZ).unwrap();
        assert_eq!(posz.pixel(1, 1), 5);
        assert_eq!(negz.pixel(1, 1), 2);
    }

    #[test]
    fn posz_nonzero_pixels_count_occupied_columns() {
        let mut stream = RngStream::from_key(&[17]);
        for _ in 0..200 {
            let mut shape = VoxelShape::empty(4);
            for i in 0..64 {
                if stream.next_f64() < 0.3 {
                    shape.cells[i] = stream.next_range(1, 7) as u8;
                }
            }
            let views = render_views(&shape);
            let posz = views.iter().find(|v| v.axis == ViewAxis::PosZ).unwrap();
            let mut columns = 0;
            for y in 0..4 {
                for x in 0..4 {
                    if (0..4).any(|z| shape.get(x, y, z) != 0) {
                        columns += 1;
                    }
                }
            }
            assert_eq!(posz.nonzero_pixels(), columns);
        }
    }

    #[test]
    fn single_cell_meshes_to_six_faces() {
        let mut shape = VoxelShape::empty(4);
        shape.set(2, 1, 0, 4);
        let mesh = voxels_to_mesh(&shape, 1.0);
        assert_eq!(mesh.faces.len(), 12);
        mesh.validate().unwrap();
        assert_eq!(mesh.total_area(), 6.0);
    }

    #[test]
    fn bar_hides_shared_faces() {
        let mut shape = VoxelShape::empty(4);
        shape.set(0, 0, 0, 1);
        shape.set(1, 0, 0, 1);
        let mesh = voxels_to_mesh(&shape, 1.0);
        assert_eq!(mesh.faces.len(), 20); // 10 exposed faces
        assert_eq!(mesh.total_area(), 10.0);
    }

    #[test]
    fn empty_shape_meshes_empty() {
        let mesh = voxels_to_mesh(&VoxelShape::empty(4), 1.0);
        assert!(mesh.faces.is_empty());
        assert!(mesh.vertices.is_empty());
    }

    #[test]
    fn surface_area_scales_with_cell_size() {
        let mut shape = VoxelShape::empty(4);
        shape.set(0, 0, 0, 2);
        shape.set(0, 1, 0, 2);
        shape.set(0, 1, 1, 3);
        let exposed = 14.0; // 3 cells, 18 faces minus 2 * 2 shared
        let mesh = voxels_to_mesh(&shape, 0.5);
        assert_eq!(mesh.total_area(), exposed * 0.25);
        let mesh = voxels_to_mesh(&shape, 0.3);
        assert!((mesh.total_area() - exposed * 0.09).abs() < 1e-12);
    }

    #[test]
    fn mesh_texel_colors_match_cells() {
        let mut shape = VoxelShape::empty(4);
        shape.set(0, 0, 0, 3);
        let mesh = voxels_to_mesh(&shape, 1.0);
        let uv = mesh.uvs[0];
        let rgb = mesh.texture.sample_nearest(uv[0], uv[1]);
        let expect = palette_color(3);
        assert_eq!(
            rgb,
            [
                expect[0] as f64 / 255.0,
                expect[1] as f64 / 255.0,
                expect[2] as f64 / 255.0
            ]
        );
    }

    #[test]
    fn prompt_display_is_readable() {
        let mut stream = RngStream::from_key(&[3]);
        let spec = sample_prompt(&mut stream, Difficulty::Hard, 1, 4, 7);
        let text = spec.to_string();
        assert!(text.contains(spec.family.name()));
    }
}
