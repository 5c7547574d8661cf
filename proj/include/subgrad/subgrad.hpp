#ifndef SUBGRAD_SUBGRAD_HPP_
#define SUBGRAD_SUBGRAD_HPP_

#include "subgrad/oracle.hpp"
#include "subgrad/problem.hpp"
#include "subgrad/report.hpp"
#include "subgrad/sg.hpp"
#include "subgrad/dsg.hpp"
#include "subgrad/pds.hpp"
#include "subgrad/testbeds.hpp"
#include "subgrad/lp.hpp"
#include "subgrad/validate.hpp"

#endif  // SUBGRAD_SUBGRAD_HPP_
