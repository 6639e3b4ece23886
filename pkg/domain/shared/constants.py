# Subcomandos que acepta el laboratorio (python manage.py lab <subcomando>)
SUBCOMMAND_CHOICES = [
    ("calibrate", "Calibración de convenciones"),
    ("verify-eq14", "Verificación de la ecuación de primer orden"),
    ("verify-eq13", "Verificación de la ecuación de Schrödinger normal-ordenada"),
    ("semigroup", "Ley de semigrupo de la evolución"),
    ("oracle-qm", "Oráculo de mecánica cuántica (relación 5)"),
    ("sweep", "Barrido de residuos sobre la malla (N, m, T)"),
]

# Presets para los datos de la capa inicial v̂
V_HAT_PRESET_CHOICES = [
    ("zero", "Capa inicial nula"),
    ("single", "Un solo modo k"),
    ("random", "Aleatorio con semilla (campo real, norma 1)"),
]

# Veredictos posibles de un ResidualReport
VERDICT_CHOICES = [
    ("pass", "Aprobado"),
    ("fail", "Fallido"),
    ("inconclusive", "No concluyente"),
]

# ==================== TOLERANCIAS POR DEFECTO ====================
# Aritmética pura a nivel de coeficientes
TOL_COEFF = 1e-12
# Caminos con operadores de segundo orden (más operaciones)
TOL_SECOND_ORDER = 1e-10
# Diferencias finitas en T con dT = 1e-4
TOL_NUMERIC = 1e-6
# Dispersión de g(T) entre muestras de u
TOL_SPREAD = 1e-9
# Cociente lhs/rhs de la relación 5
TOL_RELATION5 = 1e-2

# ==================== MALLA DE ACEPTACIÓN ====================
SWEEP_MODES = [2, 8, 16, 64]
SWEEP_MASSES = [0.5, 1.0, 2.0]
SWEEP_TIMES = [0.1, 1.0, 10.0]

# Malla por defecto del oráculo QM
QM_Q_MIN = -12.0
QM_Q_MAX = 12.0
QM_POINTS = 1024
QM_DT = 1e-3

# Entradas de la relación 5 por debajo de este módulo no se comparan
RELATION5_NOISE_FLOOR = 1e-8
# Amplitud máxima permitida en los bordes de la malla QM
BOUNDARY_LEAK_THRESHOLD = 1e-8
