#pragma once

#include "stemcert/derivation.hpp"
#include "stemcert/einv.hpp"
#include "stemcert/exact.hpp"
#include "stemcert/hopf.hpp"
#include "stemcert/jorder.hpp"
#include "stemcert/kring.hpp"
#include "stemcert/report.hpp"
