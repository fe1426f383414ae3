#pragma once

#include "atsp/beta.hpp"
#include "atsp/construction.hpp"
#include "atsp/csv.hpp"
#include "atsp/datasets.hpp"
#include "atsp/filtration.hpp"
#include "atsp/frame.hpp"
#include "atsp/geometry.hpp"
#include "atsp/graph.hpp"
#include "atsp/io.hpp"
#include "atsp/jones.hpp"
#include "atsp/mst.hpp"
#include "atsp/nets.hpp"
#include "atsp/pipeline.hpp"
#include "atsp/polyline.hpp"
