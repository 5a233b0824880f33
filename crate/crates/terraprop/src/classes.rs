//! Terrain class taxonomy shared by every pipeline stage.

use alloc::string::String;
use alloc::vec::Vec;

/// Ordered set of terrain class names with display colors.
///
/// Class indices in label rasters, probability maps, and the property model
/// all refer to positions in this set. Index 255 is reserved for the
/// [`IGNORE`](crate::raster::IGNORE) sentinel, so at most 255 classes fit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TerrainClassSet {
    names: Vec<String>,
    colors: Vec<[u8; 3]>,
}

#[derive(Debug, thiserror::Error)]
pub enum ClassSetError {
    #[error("class set needs at least 2 classes, got {0}")]
    TooFewClasses(usize),
    #[error("class set holds at most 255 classes, got {0}")]
    TooManyClasses(usize),
    #[error("class name {0:?} appears more than once")]
    DuplicateName(String),
    #[error("class {0} has an empty name")]
    EmptyName(usize),
    #[error("{names} class names but {colors} colors")]
    ColorCountMismatch { names: usize, colors: usize },
}

impl TerrainClassSet {
    pub fn new(names: Vec<String>, colors: Vec<[u8; 3]>) -> Result<Self, ClassSetError> {
        if names.len() < 2 {
            return Err(ClassSetError::TooFewClasses(names.len()));
        }
        if names.len() > 255 {
            return Err(ClassSetError::TooManyClasses(names.len()));
        }
        if names.len() != colors.len() {
            return Err(ClassSetError::ColorCountMismatch {
                names: names.len(),
                colors: colors.len(),
            });
        }
        for (i, name) in names.iter().enumerate() {
            if name.is_empty() {
                return Err(ClassSetError::EmptyName(i));
            }
            if names[..i].contains(name) {
                return Err(ClassSetError::DuplicateName(name.clone()));
            }
        }
        Ok(Self { names, colors })
    }

    /// Six-class taxonomy used by the bundled property model and tools:
    /// soil, stony soil, gravel, bedrock, rock, background.
    pub fn standard() -> Self {
        let names = ["soil", "stony soil", "gravel", "bedrock", "rock", "background"];
        let colors = [
            [168, 120, 74],
            [150, 130, 96],
            [128, 128, 120],
            [90, 86, 80],
            [60, 60, 64],
            [0, 0, 0],
        ];
        Self::new(
            names.iter().map(|s| String::from(*s)).collect(),
            colors.to_vec(),
        )
        .expect("standard class set is valid")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn name(&self, class: usize) -> Option<&str> {
        self.names.get(class).map(String::as_str)
    }

    pub fn color(&self, class: usize) -> Option<[u8; 3]> {
        self.colors.get(class).copied()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.names.iter().map(String::as_str)
    }
}
