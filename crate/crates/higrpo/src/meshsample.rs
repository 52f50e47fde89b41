//! Mesh to dense colored point cloud conversion.
//!
//! A textured triangle mesh is converted to a surface point cloud in three
//! steps:
//!
//! 1. area-weighted allocation: face `f` of area `A_f` receives
//!    `n_f = ceil(rho * A_f)` samples,
//! 2. uniform barycentric sampling inside each face via the square-root
//!    construction,
//! 3. UV interpolation and nearest-texel color lookup.
//!
//! Faces draw from independent RNG substreams keyed by face index, so the
//! cloud is bit-identical for a fixed `(mesh, rho, seed)` regardless of how
//! the per-face work is scheduled.
//!
//! File formats: OBJ subset (`v`, `vt`, `f a/b c/d e/f` triangles) in,
//! binary PPM (P6) textures in, ASCII PLY point clouds out.

use std::io::{BufRead, Write};

use rayon::prelude::*;

use crate::rng::{domain, RngStream};
use crate::{Error, Result};

/// RGB texture, row-major bytes, row 0 at the top of the image.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Texture {
    pub width: usize,
    pub height: usize,
    pub rgb: Vec<u8>,
}

impl Texture {
    pub fn new(width: usize, height: usize, rgb: Vec<u8>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::Parse("texture dimensions must be >= 1".into()));
        }
        if rgb.len() != 3 * width * height {
            return Err(Error::Parse(format!(
                "texture byte length {} != 3*{width}*{height}",
                rgb.len()
            )));
        }
        Ok(Self { width, height, rgb })
    }

    /// Nearest-texel lookup. `u` grows rightwards; `v = 1` is image row 0.
    pub fn sample_nearest(&self, u: f64, v: f64) -> [f64; 3] {
        let tx = ((u * self.width as f64).floor() as i64).clamp(0, self.width as i64 - 1) as usize;
        // v-flip: v = 1 maps to row 0
        let flipped = ((1.0 - v) * self.height as f64).floor() as i64;
        let ty = flipped.clamp(0, self.height as i64 - 1) as usize;
        let o = 3 * (ty * self.width + tx);
        [
            self.rgb[o] as f64 / 255.0,
            self.rgb[o + 1] as f64 / 255.0,
            self.rgb[o + 2] as f64 / 255.0,
        ]
    }
}

/// One triangle: three (vertex index, uv index) pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Face {
    pub corners: [(usize, usize); 3],
}

/// Textured triangle mesh.
#[derive(Debug, Clone, PartialEq)]
pub struct Mesh {
    pub vertices: Vec<[f64; 3]>,
    pub uvs: Vec<[f64; 2]>,
    pub faces: Vec<Face>,
    pub texture: Texture,
}

impl Mesh {
    /// Check all face indices are in range.
    pub fn validate(&self) -> Result<()> {
        for (fi, face) in self.faces.iter().enumerate() {
            for &(vi, ti) in &face.corners {
                if vi >= self.vertices.len() {
                    return Err(Error::Parse(format!(
                        "face {fi}: vertex index {vi} out of range"
                    )));
                }
                if ti >= self.uvs.len() {
                    return Err(Error::Parse(format!("face {fi}: uv index {ti} out of range")));
                }
            }
        }
        Ok(())
    }

    pub fn face_vertices(&self, face: &Face) -> [[f64; 3]; 3] {
        [
            self.vertices[face.corners[0].0],
            self.vertices[face.corners[1].0],
            self.vertices[face.corners[2].0],
        ]
    }

    pub fn face_uvs(&self, face: &Face) -> [[f64; 2]; 3] {
        [
            self.uvs[face.corners[0].1],
            self.uvs[face.corners[1].1],
            self.uvs[face.corners[2].1],
        ]
    }

    pub fn total_area(&self) -> f64 {
        self.faces
            .iter()
            .map(|f| {
                let [a, b, c] = self.face_vertices(f);
                face_area(a, b, c)
            })
            .sum()
    }
}

/// Colored surface samples.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct PointCloud {
    pub points: Vec<([f64; 3], [f64; 3])>,
}

impl PointCloud {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

fn sub(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn norm(a: [f64; 3]) -> f64 {
    (a[0] * a[0] + a[1] * a[1] + a[2] * a[2]).sqrt()
}

/// Triangle area `|(v2-v1) x (v3-v1)| / 2`.
pub fn face_area(v1: [f64; 3], v2: [f64; 3], v3: [f64; 3]) -> f64 {
    norm(cross(sub(v2, v1), sub(v3, v1))) / 2.0
}

/// Per-face sample counts `n_f = ceil(rho * A_f)`; zero-area faces get 0.
pub fn allocate_samples(mesh: &Mesh, rho: f64) -> Result<Vec<usize>> {
    if !(rho > 0.0) {
        return Err(Error::Config(format!("sample density must be > 0, got {rho}")));
    }
    Ok(mesh
        .faces
        .iter()
        .map(|f| {
            let [a, b, c] = mesh.face_vertices(f);
            let area = face_area(a, b, c);
            if area == 0.0 {
                0
            } else {
                (rho * area).ceil() as usize
            }
        })
        .collect())
}

/// Uniform barycentric coordinates via the square-root construction.
///
/// `alpha = 1 - sqrt(u)`, `beta = sqrt(u)(1 - v)`, `gamma = sqrt(u) v`.
pub fn sample_barycentric(stream: &mut RngStream) -> [f64; 3] {
    let u = stream.next_f64();
    let v = stream.next_f64();
    let su = u.sqrt();
    [1.0 - su, su * (1.0 - v), su * v]
}

/// Convex combination of the face's vertices.
pub fn point_from_bary(verts: &[[f64; 3]; 3], bary: [f64; 3]) -> [f64; 3] {
    let mut p = [0.0; 3];
    for d in 0..3 {
        p[d] = bary[0] * verts[0][d] + bary[1] * verts[1][d] + bary[2] * verts[2][d];
    }
    p
}

/// Interpolate UVs barycentrically, then nearest-texel lookup.
pub fn color_from_bary(uvs: &[[f64; 2]; 3], bary: [f64; 3], texture: &Texture) -> [f64; 3] {
    let u = bary[0] * uvs[0][0] + bary[1] * uvs[1][0] + bary[2] * uvs[2][0];
    let v = bary[0] * uvs[0][1] + bary[1] * uvs[1][1] + bary[2] * uvs[2][1];
    texture.sample_nearest(u, v)
}

/// Sample the whole mesh into a dense colored point cloud.
///
/// Points are concatenated in face order; each face uses the substream
/// keyed by its index.
pub fn mesh_to_pointcloud(mesh: &Mesh, rho: f64, stream: &RngStream) -> Result<PointCloud> {
    mesh.validate()?;
    let counts = allocate_samples(mesh, rho)?;
    let per_face: Vec<Vec<([f64; 3], [f64; 3])>> = mesh
        .faces
        .par_iter()
        .zip(counts.par_iter())
        .enumerate()
        .map(|(fi, (face, &n))| {
            let verts = mesh.face_vertices(face);
            let uvs = mesh.face_uvs(face);
            let mut s = stream.substream(&[domain::MESH, fi as u64]);
            (0..n)
                .map(|_| {
                    let bary = sample_barycentric(&mut s);
                    let p = point_from_bary(&verts, bary);
                    let c = color_from_bary(&uvs, bary, &mesh.texture);
                    (p, c)
                })
                .collect()
        })
        .collect();
    let mut points = Vec::with_capacity(counts.iter().sum());
    for chunk in per_face {
        points.extend(chunk);
    }
    Ok(PointCloud { points })
}

/// Parse the OBJ subset: `v x y z`, `vt u v`, `f a/b c/d e/f` with 1-based
/// vertex/uv indices and triangular faces only.
pub fn parse_obj<R: BufRead>(reader: R) -> Result<(Vec<[f64; 3]>, Vec<[f64; 2]>, Vec<Face>)> {
    let mut vertices = Vec::new();
    let mut uvs = Vec::new();
    let mut faces = Vec::new();
    for (ln, line) in reader.lines().enumerate() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut it = line.split_whitespace();
        let tag = it.next().unwrap();
        let bad = |what: &str| Error::Parse(format!("obj line {}: {what}: {line}", ln + 1));
        match tag {
            "v" => {
                let mut p = [0.0; 3];
                for slot in &mut p {
                    *slot = it
                        .next()
                        .ok_or_else(|| bad("expected 3 coordinates"))?
                        .parse()
                        .map_err(|_| bad("bad coordinate"))?;
                }
                vertices.push(p);
            }
            "vt" => {
                let mut p = [0.0; 2];
                for slot in &mut p {
                    *slot = it
                        .next()
                        .ok_or_else(|| bad("expected 2 coordinates"))?
                        .parse()
                        .map_err(|_| bad("bad coordinate"))?;
                }
                uvs.push(p);
            }
            "f" => {
                let corners: Vec<&str> = it.collect();
                if corners.len() != 3 {
                    return Err(bad("faces must be triangles"));
                }
                let mut parsed = [(0usize, 0usize); 3];
                for (k, c) in corners.iter().enumerate() {
                    let mut parts = c.split('/');
                    let vi: usize = parts
                        .next()
                        .and_then(|s| s.parse().ok())
                        .ok_or_else(|| bad("bad vertex index"))?;
                    let ti: usize = parts
                        .next()
                        .and_then(|s| s.parse().ok())
                        .ok_or_else(|| bad("bad uv index"))?;
                    if vi == 0 || ti == 0 {
                        return Err(bad("indices are 1-based"));
                    }
                    parsed[k] = (vi - 1, ti - 1);
                }
                faces.push(Face { corners: parsed });
            }
            _ => return Err(bad("unsupported directive")),
        }
    }
    Ok((vertices, uvs, faces))
}

/// Parse a binary PPM (P6, maxval 255) texture.
pub fn parse_ppm(data: &[u8]) -> Result<Texture> {
    let mut pos = 0usize;
    let mut next_token = |data: &[u8]| -> Result<String> {
        // skip whitespace and # comments
        loop {
            while pos < data.len() && data[pos].is_ascii_whitespace() {
                pos += 1;
            }
            if pos < data.len() && data[pos] == b'#' {
                while pos < data.len() && data[pos] != b'\n' {
                    pos += 1;
                }
            } else {
                break;
            }
        }
        let start = pos;
        while pos < data.len() && !data[pos].is_ascii_whitespace() {
            pos += 1;
        }
        if start == pos {
            return Err(Error::Parse("ppm: unexpected end of header".into()));
        }
        Ok(String::from_utf8_lossy(&data[start..pos]).into_owned())
    };
    let magic = next_token(data)?;
    if magic != "P6" {
        return Err(Error::Parse(format!("ppm: expected P6, got {magic}")));
    }
    let width: usize = next_token(data)?
        .parse()
        .map_err(|_| Error::Parse("ppm: bad width".into()))?;
    let height: usize = next_token(data)?
        .parse()
        .map_err(|_| Error::Parse("ppm: bad height".into()))?;
    let maxval: usize = next_token(data)?
        .parse()
        .map_err(|_| Error::Parse("ppm: bad maxval".into()))?;
    if maxval != 255 {
        return Err(Error::Parse(format!("ppm: maxval must be 255, got {maxval}")));
    }
    // exactly one whitespace byte separates header and raster
    pos += 1;
    let need = 3 * width * height;
    if data.len() < pos + need {
        return Err(Error::Parse("ppm: truncated raster".into()));
    }
    Texture::new(width, height, data[pos..pos + need].to_vec())
}

/// Write a binary PPM (P6, maxval 255).
pub fn write_ppm<W: Write>(w: &mut W, texture: &Texture) -> Result<()> {
    write!(w, "P6\n{} {}\n255\n", texture.width, texture.height)?;
    w.write_all(&texture.rgb)?;
    Ok(())
}

/// Write the cloud as ASCII PLY with `x y z red green blue` properties,
/// colors as 0-255 bytes.
pub fn write_ply<W: Write>(w: &mut W, cloud: &PointCloud) -> Result<()> {
    writeln!(w, "ply")?;
    writeln!(w, "format ascii 1.0")?;
    writeln!(w, "element vertex {}", cloud.points.len())?;
    for axis in ["x", "y", "z"] {
        writeln!(w, "property double {axis}")?;
    }
    for chan in ["red", "green", "blue"] {
        writeln!(w, "property uchar {chan}")?;
    }
    writeln!(w, "end_header")?;
    for (p, c) in &cloud.points {
        let bytes: Vec<u8> = c.iter().map(|&x| (x * 255.0).round() as u8).collect();
        writeln!(
            w,
            "{} {} {} {} {} {}",
            p[0], p[1], p[2], bytes[0], bytes[1], bytes[2]
        )?;
    }
    Ok(())
}
