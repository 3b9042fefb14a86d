//! JSON scene, category and SUE model files.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{Mat3, Primitive, RigidTransform, UnitQuat, Vec3};
use crate::solver::Scene;
use crate::sue::{CategoryLibrary, SueModel};

pub const SCENE_VERSION: &str = "1";

fn v3(a: [f64; 3]) -> Vec3 {
    Vec3::from(a)
}

fn a3(v: &Vec3) -> [f64; 3] {
    [v.x, v.y, v.z]
}

fn m3(a: [f64; 9]) -> Mat3 {
    Mat3::from_row_slice(&a)
}

fn a9(m: &Mat3) -> [f64; 9] {
    let mut out = [0.0; 9];
    for r in 0..3 {
        for c in 0..3 {
            out[3 * r + c] = m[(r, c)];
        }
    }
    out
}

/// A primitive as stored on disk. Field names: `x` anchor point, `v` unit
/// direction or axis, `n` plane normal, `r` radius, `theta` cone half-angle,
/// `A` ellipsoid matrix in row-major order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum PrimitiveJson {
    Point {
        x: [f64; 3],
    },
    Line {
        x: [f64; 3],
        v: [f64; 3],
    },
    Plane {
        x: [f64; 3],
        n: [f64; 3],
    },
    Sphere {
        x: [f64; 3],
        r: f64,
    },
    Cylinder {
        x: [f64; 3],
        v: [f64; 3],
        r: f64,
    },
    Cone {
        x: [f64; 3],
        v: [f64; 3],
        theta: f64,
    },
    Ellipsoid {
        x: [f64; 3],
        #[serde(rename = "A")]
        a: [f64; 9],
    },
}

impl PrimitiveJson {
    pub fn to_primitive(&self) -> Result<Primitive> {
        Ok(match *self {
            PrimitiveJson::Point { x } => Primitive::point(v3(x)),
            PrimitiveJson::Line { x, v } => Primitive::line(v3(x), v3(v))?,
            PrimitiveJson::Plane { x, n } => Primitive::plane(v3(x), v3(n))?,
            PrimitiveJson::Sphere { x, r } => Primitive::sphere(v3(x), r)?,
            PrimitiveJson::Cylinder { x, v, r } => Primitive::cylinder(v3(x), v3(v), r)?,
            PrimitiveJson::Cone { x, v, theta } => Primitive::cone(v3(x), v3(v), theta)?,
            PrimitiveJson::Ellipsoid { x, a } => Primitive::ellipsoid(v3(x), m3(a))?,
        })
    }
}

impl From<&Primitive> for PrimitiveJson {
    fn from(p: &Primitive) -> Self {
        match p {
            Primitive::Point { position } => PrimitiveJson::Point { x: a3(position) },
            Primitive::Line { point, direction } => PrimitiveJson::Line {
                x: a3(point),
                v: a3(direction),
            },
            Primitive::Plane { point, normal } => PrimitiveJson::Plane {
                x: a3(point),
                n: a3(normal),
            },
            Primitive::Sphere { center, radius } => PrimitiveJson::Sphere {
                x: a3(center),
                r: *radius,
            },
            Primitive::Cylinder {
                point,
                axis,
                radius,
            } => PrimitiveJson::Cylinder {
                x: a3(point),
                v: a3(axis),
                r: *radius,
            },
            Primitive::Cone {
                apex,
                axis,
                half_angle,
            } => PrimitiveJson::Cone {
                x: a3(apex),
                v: a3(axis),
                theta: *half_angle,
            },
            Primitive::Ellipsoid { center, shape } => PrimitiveJson::Ellipsoid {
                x: a3(center),
                a: a9(shape),
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Correspondence {
    pub x: PrimitiveJson,
    pub y: PrimitiveJson,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroundtruthJson {
    pub quaternion_xyzw: [f64; 4],
    pub translation: [f64; 3],
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SceneFile {
    pub version: String,
    pub correspondences: Vec<Correspondence>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub groundtruth: Option<GroundtruthJson>,
}

impl SceneFile {
    pub fn from_scene(scene: &Scene) -> Self {
        SceneFile {
            version: SCENE_VERSION.to_string(),
            correspondences: scene
                .x
                .iter()
                .zip(&scene.y)
                .map(|(x, y)| Correspondence {
                    x: x.into(),
                    y: y.into(),
                })
                .collect(),
            groundtruth: scene.groundtruth.map(|t| GroundtruthJson {
                quaternion_xyzw: t.quaternion().to_xyzw(),
                translation: a3(&t.translation),
            }),
        }
    }

    pub fn to_scene(&self) -> Result<Scene> {
        let mut xs = Vec::with_capacity(self.correspondences.len());
        let mut ys = Vec::with_capacity(self.correspondences.len());
        for (i, c) in self.correspondences.iter().enumerate() {
            let field =
                |side: &str, e: Error| Error::Parse(format!("correspondences[{i}].{side}: {e}"));
            xs.push(c.x.to_primitive().map_err(|e| field("x", e))?);
            ys.push(c.y.to_primitive().map_err(|e| field("y", e))?);
        }
        let mut scene = Scene::new(xs, ys)?;
        if let Some(gt) = &self.groundtruth {
            let [x, y, z, w] = gt.quaternion_xyzw;
            let q = UnitQuat::from_xyzw(x, y, z, w);
            if !(q.norm() > 0.0) || !gt.translation.iter().all(|c| c.is_finite()) {
                return Err(Error::Parse(
                    "groundtruth: quaternion must be nonzero and finite".into(),
                ));
            }
            scene = scene.with_groundtruth(RigidTransform::from_quat(&q, v3(gt.translation)));
        }
        Ok(scene)
    }
}

fn json_error(what: &str, e: serde_json::Error) -> Error {
    Error::Parse(format!("{what}: {e}"))
}

pub fn parse_scene(text: &str) -> Result<Scene> {
    let file: SceneFile = serde_json::from_str(text).map_err(|e| json_error("scene", e))?;
    file.to_scene()
}

pub fn scene_to_json(scene: &Scene) -> String {
    serde_json::to_string_pretty(&SceneFile::from_scene(scene)).expect("scene serializes")
}

/// `K` library shapes of `N` keypoints each, with optional keypoint names.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CategoryFile {
    #[serde(rename = "K")]
    pub k: usize,
    #[serde(rename = "N")]
    pub n: usize,
    pub shapes: Vec<Vec<[f64; 3]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
}

impl CategoryFile {
    pub fn from_library(lib: &CategoryLibrary) -> Self {
        CategoryFile {
            k: lib.num_shapes(),
            n: lib.num_keypoints(),
            shapes: lib
                .shapes
                .iter()
                .map(|s| s.iter().map(a3).collect())
                .collect(),
            names: lib.names.clone(),
        }
    }

    pub fn to_library(&self) -> Result<CategoryLibrary> {
        if self.shapes.len() != self.k {
            return Err(Error::Parse(format!(
                "K = {} but {} shapes given",
                self.k,
                self.shapes.len()
            )));
        }
        for (i, s) in self.shapes.iter().enumerate() {
            if s.len() != self.n {
                return Err(Error::Parse(format!(
                    "shapes[{i}]: N = {} but {} keypoints given",
                    self.n,
                    s.len()
                )));
            }
        }
        let lib = CategoryLibrary::new(
            self.shapes
                .iter()
                .map(|s| s.iter().copied().map(v3).collect())
                .collect(),
        )?;
        match &self.names {
            Some(names) => lib.with_names(names.clone()),
            None => Ok(lib),
        }
    }
}

pub fn parse_category(text: &str) -> Result<CategoryLibrary> {
    let file: CategoryFile = serde_json::from_str(text).map_err(|e| json_error("category", e))?;
    file.to_library()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SueKeypoint {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub b: [f64; 3],
    #[serde(rename = "C")]
    pub c: [f64; 9],
    #[serde(rename = "A")]
    pub a: [f64; 9],
}

/// A SUE model: per-keypoint mean `b`, covariance `C` and ellipsoid matrix
/// `A`, plus the confidence level and quantile used.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SueFile {
    pub eta: f64,
    pub chi2: f64,
    pub reg: f64,
    pub keypoints: Vec<SueKeypoint>,
}

impl SueFile {
    pub fn from_model(model: &SueModel, names: Option<&[String]>) -> Self {
        SueFile {
            eta: model.eta,
            chi2: model.chi2,
            reg: model.reg,
            keypoints: (0..model.means.len())
                .map(|i| SueKeypoint {
                    name: names.map(|n| n[i].clone()),
                    b: a3(&model.means[i]),
                    c: a9(&model.covariances[i]),
                    a: a9(&model.shapes[i]),
                })
                .collect(),
        }
    }

    pub fn to_model(&self) -> Result<SueModel> {
        let model = SueModel {
            means: self.keypoints.iter().map(|k| v3(k.b)).collect(),
            covariances: self.keypoints.iter().map(|k| m3(k.c)).collect(),
            shapes: self.keypoints.iter().map(|k| m3(k.a)).collect(),
            eta: self.eta,
            chi2: self.chi2,
            reg: self.reg,
        };
        if model.means.is_empty() {
            return Err(Error::Parse("SUE model has no keypoints".into()));
        }
        model
            .to_primitives()
            .map_err(|e| Error::Parse(format!("SUE model: {e}")))?;
        Ok(model)
    }
}

pub fn parse_sue(text: &str) -> Result<SueModel> {
    let file: SueFile = serde_json::from_str(text).map_err(|e| json_error("SUE model", e))?;
    file.to_model()
}
