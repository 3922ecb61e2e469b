#pragma once

// Umbrella header.

#include "dcover/branch_data.hpp"
#include "dcover/cluster_notation.hpp"
#include "dcover/cluster_picture.hpp"
#include "dcover/component_group.hpp"
#include "dcover/cover_io.hpp"
#include "dcover/disc_model.hpp"
#include "dcover/dual_graph.hpp"
#include "dcover/pipeline.hpp"
#include "dcover/semistability.hpp"
#include "dcover/smith_normal_form.hpp"
