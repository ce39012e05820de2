//! Decoding image files into 8-bit RGB pixel grids.
//!
//! Alpha is dropped and grayscale is expanded to RGB. 16-bit channels keep
//! their high byte. PNG and JPEG are supported.

use std::io::Cursor;
use std::path::Path;

use image::{DynamicImage, ImageError, ImageReader};
use sha2::{Digest, Sha256};

use crate::color::PixelColor;
use crate::error::{Error, Result};
use crate::sampler::ImagePixels;

/// A decoded image together with the hex SHA-256 of its file bytes.
#[derive(Debug, Clone)]
pub struct LoadedImage {
    pub pixels: ImagePixels,
    pub hash: String,
}

pub fn ingest_image(path: impl AsRef<Path>) -> Result<ImagePixels> {
    load_image(path).map(|l| l.pixels)
}

pub fn load_image(path: impl AsRef<Path>) -> Result<LoadedImage> {
    let path = path.as_ref();
    let bytes = std::fs::read(path).map_err(|e| Error::io(path, e))?;
    let pixels = decode_bytes(&bytes, path)?;
    Ok(LoadedImage { pixels, hash: hex::encode(Sha256::digest(&bytes)) })
}

/// Decode in-memory file bytes; `path` is used for format hints and messages.
pub fn decode_bytes(bytes: &[u8], path: &Path) -> Result<ImagePixels> {
    let unsupported = |format: String| Error::UnsupportedFormat { path: path.to_path_buf(), format };
    let reader = ImageReader::new(Cursor::new(bytes))
        .with_guessed_format()
        .map_err(|e| Error::io(path, e))?;
    let Some(format) = reader.format() else {
        let ext = path.extension().and_then(|e| e.to_str()).unwrap_or("unknown");
        return Err(unsupported(ext.to_string()));
    };
    let img = reader.decode().map_err(|e| match e {
        ImageError::Unsupported(_) => unsupported(format!("{format:?}")),
        e => Error::Decode { path: path.to_path_buf(), message: e.to_string() },
    })?;
    to_pixels(img, path)
}

fn to_pixels(img: DynamicImage, path: &Path) -> Result<ImagePixels> {
    let (width, height) = (img.width() as usize, img.height() as usize);
    let pixels: Vec<PixelColor> = match img {
        DynamicImage::ImageLuma8(_)
        | DynamicImage::ImageLumaA8(_)
        | DynamicImage::ImageRgb8(_)
        | DynamicImage::ImageRgba8(_) => {
            img.to_rgb8().pixels().map(|p| PixelColor::from(p.0)).collect()
        }
        DynamicImage::ImageLuma16(_)
        | DynamicImage::ImageLumaA16(_)
        | DynamicImage::ImageRgb16(_)
        | DynamicImage::ImageRgba16(_) => img
            .to_rgb16()
            .pixels()
            .map(|p| PixelColor::new((p.0[0] >> 8) as u8, (p.0[1] >> 8) as u8, (p.0[2] >> 8) as u8))
            .collect(),
        other => {
            return Err(Error::UnsupportedFormat {
                path: path.to_path_buf(),
                format: format!("{:?} pixels", other.color()),
            })
        }
    };
    ImagePixels::new(width, height, pixels)
}
