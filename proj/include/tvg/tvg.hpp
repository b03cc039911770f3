#pragma once

#include "tvg/classes.hpp"
#include "tvg/closure.hpp"
#include "tvg/core.hpp"
#include "tvg/hierarchy.hpp"
#include "tvg/io.hpp"
#include "tvg/journeys.hpp"
#include "tvg/relabel.hpp"
#include "tvg/simforest.hpp"
#include "tvg/time.hpp"
#include "tvg/windows.hpp"
