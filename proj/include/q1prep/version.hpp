#pragma once

#define Q1PREP_VERSION "0.1.0"
