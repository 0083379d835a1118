//! Stereo depth estimation via conditional disparity diffusion.
//!
//! The pipeline: semi-global matching produces a raw disparity map from a
//! rectified stereo pair, a small convolutional denoiser learns the reverse
//! diffusion process over normalized disparity maps conditioned on the stereo
//! images and the raw disparity, and at sampling time the reverse process is
//! steered by the gradient of a stereo photometric consistency loss.
//!
//! Modules map onto pipeline stages:
//! - [`imagecore`]: float image containers, PFM/PGM/PNG IO, pyramids, sampling
//! - [`geometry`]: disparity/depth conversions, warping, photometric losses
//!   and their analytic gradients, point clouds
//! - [`sgm`]: census-based semi-global matching
//! - [`diffusion`]: noise schedules, forward process, guided reverse sampling
//! - [`denoiser`]: the conditional noise-prediction network and its trainer
//! - [`datagen`]: procedural stereo scenes with specular/transparent failures
//! - [`metrics`]: disparity and depth evaluation
//! - [`cli`]: the command-line pipeline driver

pub mod cli;
pub mod datagen;
pub mod denoiser;
pub mod diffusion;
pub mod error;
pub mod geometry;
pub mod imagecore;
pub mod metrics;
pub mod rng;
pub mod sgm;
pub mod threads;

pub use error::{Error, Result};
