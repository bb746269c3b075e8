#pragma once

#include "certificate.hpp"
#include "char_table.hpp"
#include "errors.hpp"
#include "exactnum.hpp"
#include "f2.hpp"
#include "heisenberg.hpp"
#include "help_engine.hpp"
#include "labeling.hpp"
#include "modular.hpp"
#include "oracle.hpp"
#include "psl2.hpp"
#include "residue.hpp"
#include "theorem.hpp"
