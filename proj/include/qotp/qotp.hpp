#pragma once

// Umbrella header for the qotp library: exact 1-3 qubit quantum states, the
// singlet-based one-time-pad direct-communication protocol, pluggable
// eavesdropper models, and the security-analysis toolbox built on them.

#include "qotp/adversary.hpp"
#include "qotp/analysis.hpp"
#include "qotp/channels.hpp"
#include "qotp/config.hpp"
#include "qotp/errors.hpp"
#include "qotp/info.hpp"
#include "qotp/matrix.hpp"
#include "qotp/measurement.hpp"
#include "qotp/protocol.hpp"
#include "qotp/protocol_types.hpp"
#include "qotp/report.hpp"
#include "qotp/rng.hpp"
#include "qotp/states.hpp"
