#pragma once

#include "cfslab/crypto/charset.hpp"
#include "cfslab/crypto/hardened_cipher.hpp"
#include "cfslab/crypto/hash.hpp"
#include "cfslab/crypto/kdf.hpp"
#include "cfslab/crypto/legacy_cipher.hpp"
#include "cfslab/crypto/policy.hpp"
#include "cfslab/crypto/secp256k1.hpp"
