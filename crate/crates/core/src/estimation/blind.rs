use crate::config::SystemConfig;
use crate::error::{Error, Result};
use crate::estimation::{JammingParams, ParamMode};
use crate::linalg::{inner, wrap_angle};
use crate::pilot_phase::PilotObservation;
use crate::sim::{JammerRealization, PilotBook};

/// Choose the jammer pilot `o` and each user's partner pilot `kbar`.
///
/// `o` is the unused pilot with the largest `J`, ties going to the lower
/// index. When there are enough remaining unused pilots for every user to get
/// its own (`tau - K >= K + 1`) the users are paired with those, strongest
/// first. Otherwise the users rotate over all unused pilots strongest first,
/// so the first user shares with the jammer estimate and no user is pushed
/// onto a weak pilot while a stronger one is available.
pub fn assign_unused_pilots(j_hat: &[f64], unused: &[usize], users: usize) -> Result<(usize, Vec<usize>)> {
    if unused.is_empty() {
        return Err(Error::NoUnusedPilot {
            users,
            pilots: users + unused.len(),
        });
    }
    let mut order = unused.to_vec();
    order.sort_by(|&a, &b| j_hat[b].total_cmp(&j_hat[a]).then(a.cmp(&b)));
    let o = order[0];
    let partners = if order.len() > users { &order[1..] } else { &order[..] };
    let bar_map = (0..users).map(|k| partners[k % partners.len()]).collect();
    Ok((o, bar_map))
}

/// Blind large-array estimates from one block's projections:
///
/// * `J_i = [||y_i||^2 / M - 1]^+` for every unused pilot,
/// * then `o` and the partner pilots,
/// * then `delta_k = sqrt([||y_k||^2/M - tau p_t beta_k - 1]^+ / (||y_kbar||^2/M - 1))`
///   (zero when `||y_kbar||^2/M <= 1`) and `theta_k = angle(y_kbar^H y_k / M)`.
pub fn estimate_jamming_params(
    obs: &PilotObservation,
    book: &PilotBook,
    config: &SystemConfig,
) -> Result<JammingParams> {
    let m = obs.antennas() as f64;
    let unused = book.unused(config.users);
    let mut j_hat = vec![0.0; book.len()];
    for &i in unused {
        j_hat[i] = (obs.projection(i).norm_squared() / m - 1.0).max(0.0);
    }
    let (o_index, bar_map) = assign_unused_pilots(&j_hat, unused, config.users)?;

    let tau = config.pilot_len as f64;
    let (delta_hat, theta_hat) = bar_map
        .iter()
        .enumerate()
        .map(|(k, &bar)| {
            let y_k = obs.projection(book.user_pilot(k));
            let y_bar = obs.projection(bar);
            let bar_power = y_bar.norm_squared() / m;
            let delta = if bar_power > 1.0 {
                let own = y_k.norm_squared() / m - tau * config.p_t * config.beta_users[k] - 1.0;
                (own.max(0.0) / (bar_power - 1.0)).sqrt()
            } else {
                0.0
            };
            let theta = wrap_angle((inner(y_bar, y_k) / m).arg());
            (delta, theta)
        })
        .unzip();

    Ok(JammingParams {
        j_hat,
        delta_hat,
        theta_hat,
        o_index,
        bar_map,
        mode: ParamMode::Estimated,
    })
}

/// Parameters copied from the jammer realization, with the pilot choice made
/// on the true `J` values.
pub fn genie_params(jam: &JammerRealization, book: &PilotBook, config: &SystemConfig) -> Result<JammingParams> {
    let unused = book.unused(config.users);
    let mut j_hat = vec![0.0; book.len()];
    for &i in unused {
        j_hat[i] = jam.true_j[i];
    }
    let (o_index, bar_map) = assign_unused_pilots(&j_hat, unused, config.users)?;
    let ratios = jam.ratios(book, &bar_map);
    // A jammer that is silent during training contaminates nothing.
    let silent = config.q_t * config.beta_jammer == 0.0;
    Ok(JammingParams {
        j_hat,
        delta_hat: if silent { vec![0.0; config.users] } else { ratios.delta },
        theta_hat: ratios.theta,
        o_index,
        bar_map,
        mode: ParamMode::Genie,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pilot_phase::{assemble_pilots, receive_pilots};
    use crate::rng::{stream, StreamTag};
    use crate::sim::{draw_channels, draw_jammer_sequence, ChannelSet};
    use crate::{CMatrix, CVector, C64};

    #[test]
    fn five_pilots_two_users_all_distinct() {
        let mut j = vec![0.0; 5];
        j[2] = 0.5;
        j[3] = 2.0;
        j[4] = 1.0;
        let (o, bar) = assign_unused_pilots(&j, &[2, 3, 4], 2).unwrap();
        assert_eq!(o, 3);
        assert_eq!(bar, vec![4, 2]);
    }

    #[test]
    fn single_unused_pilot_is_shared() {
        let (o, bar) = assign_unused_pilots(&[0.0, 0.7], &[1], 1).unwrap();
        assert_eq!((o, bar), (1, vec![1]));
        let (o, bar) = assign_unused_pilots(&[0.0, 0.0, 0.7], &[2], 2).unwrap();
        assert_eq!((o, bar), (2, vec![2, 2]));
    }

    #[test]
    fn four_pilots_two_users_rotate_from_strongest() {
        let (o, bar) = assign_unused_pilots(&[0.0, 0.0, 1.0, 3.0], &[2, 3], 2).unwrap();
        assert_eq!(o, 3);
        assert_eq!(bar, vec![3, 2]);
    }

    #[test]
    fn ties_go_to_lower_index() {
        let (o, bar) = assign_unused_pilots(&[0.0, 1.0, 1.0, 1.0], &[3, 1, 2], 1).unwrap();
        assert_eq!(o, 1);
        assert_eq!(bar, vec![2]);
    }

    #[test]
    fn no_unused_pilot_errors() {
        assert!(matches!(
            assign_unused_pilots(&[0.0, 0.0], &[], 2),
            Err(Error::NoUnusedPilot { users: 2, pilots: 2 })
        ));
    }

    fn observation_with_projection_power(power: f64) -> (PilotObservation, PilotBook, SystemConfig) {
        // One user, three pilots, noiseless; unused pilot 1 carries a flat
        // vector of chosen power per entry.
        let cfg = SystemConfig::symmetric(4, 1, 3, 1.0, 1.0);
        let book = PilotBook::dft(3).unwrap();
        let ch = ChannelSet {
            h_users: vec![CVector::zeros(4)],
            h_jammer: CVector::from_element(4, C64::from(power.sqrt())),
        };
        // psi = phi_1 / sqrt(tau q_t) puts all jammer energy on pilot 1.
        let psi = book.pilots().column(1) / C64::from(3f64.sqrt());
        let jam = JammerRealization::from_sequence(psi, &book, &cfg);
        let obs = assemble_pilots(&ch, &jam, &book, &cfg, CMatrix::zeros(4, 3)).unwrap();
        (obs, book, cfg)
    }

    #[test]
    fn energy_estimate_arithmetic() {
        let (obs, book, cfg) = observation_with_projection_power(3.5);
        let p = estimate_jamming_params(&obs, &book, &cfg).unwrap();
        assert!((p.j_hat[1] - 2.5).abs() < 1e-12);
        assert_eq!(p.j_hat[2], 0.0);
        assert_eq!(p.j_hat[0], 0.0);
        assert_eq!(p.o_index, 1);
        assert_eq!(p.bar_map, vec![2]);
        // Pilot 2 carries nothing, so delta falls into the zero branch.
        assert_eq!(p.delta_hat[0], 0.0);
        assert!(p.theta_hat[0] > -std::f64::consts::PI && p.theta_hat[0] <= std::f64::consts::PI);
    }

    #[test]
    fn weak_partner_gives_zero_delta() {
        let (obs, book, cfg) = observation_with_projection_power(0.8);
        let p = estimate_jamming_params(&obs, &book, &cfg).unwrap();
        assert_eq!(p.j_hat[1], 0.0);
        assert_eq!(p.delta_hat[0], 0.0);
    }

    #[test]
    fn energy_estimate_is_accurate_at_scale() {
        let cfg = SystemConfig::symmetric(10_000, 1, 3, 10f64.sqrt(), 10.0);
        let book = PilotBook::dft(3).unwrap();
        let jam = draw_jammer_sequence(&cfg, &book, &mut stream(5, 0, 0, StreamTag::JammerSequence));
        let genie = genie_params(&jam, &book, &cfg).unwrap();
        let o = genie.o_index;
        let trials = 1_000;
        let mut good = 0;
        for t in 0..trials {
            let ch = draw_channels(&cfg, &mut stream(5, 0, t, StreamTag::Channels));
            let obs = receive_pilots(&ch, &jam, &book, &cfg, &mut stream(5, 0, t, StreamTag::PilotNoise)).unwrap();
            let p = estimate_jamming_params(&obs, &book, &cfg).unwrap();
            if (p.j_hat[o] - jam.true_j[o]).abs() / jam.true_j[o] < 0.05 {
                good += 1;
            }
        }
        assert!(good as f64 >= 0.9 * trials as f64, "{good}/{trials}");
    }

    #[test]
    fn genie_params_copy_truth() {
        let cfg = SystemConfig::symmetric(8, 2, 5, 1.0, 3.0);
        let book = PilotBook::dft(5).unwrap();
        let mut jam = draw_jammer_sequence(&cfg, &book, &mut stream(6, 0, 0, StreamTag::JammerSequence));
        let p = genie_params(&jam, &book, &cfg).unwrap();
        jam.fill_user_ratios(&book, &p.bar_map);
        let r = jam.user_ratios.as_ref().unwrap();
        assert_eq!(r.delta, p.delta_hat);
        assert_eq!(r.theta, p.theta_hat);
        for i in 2..5 {
            assert_eq!(p.j_hat[i], jam.true_j[i]);
            assert!(p.j_hat[p.o_index] >= p.j_hat[i]);
        }
        assert_ne!(p.bar_map[0], p.bar_map[1]);
        assert!(!p.bar_map.contains(&p.o_index));
    }
}
