"""Тексты командной строки: справка, ошибки, шаблоны вывода и логов."""

# Справка
PROG_DESCRIPTION = (
    "Биномиальные ряды: преобразования рядов, специальные функции "
    "и проверка тождеств в точной рациональной арифметике."
)
EVAL_HELP = "вычислить функцию по сходящемуся ряду или асимптотическому разложению"
IDENTITY_HELP = "проверить набор тождеств"
TABLE_HELP = "напечатать таблицу чисел или коэффициентов многочленов"
COMPARE_HELP = "сравнить сходящийся ряд и асимптотическое разложение"
PARAMS_HELP = "параметры в виде key=value"
ROUTE_HELP = "series или asymptotic"
ORACLE_HELP = "сравнить с независимым значением mpmath"
MAX_ORDER_HELP = "максимальный порядок (по умолчанию свой для каждого набора)"
SEED_HELP = "зерно для случайной сетки параметров"
FLOAT_HELP = "выводить значения как числа с плавающей точкой"
FAMILY_HELP = "семейство и максимальный индекс, например: poly-bernoulli q=2 4"
DIGITS_HELP = "рабочая точность в десятичных знаках"
MAX_TERMS_HELP = "предел числа членов сходящегося ряда"
TOL_HELP = "относительный допуск"
FORMAT_HELP = "формат вывода"

# Ошибки использования
UNKNOWN_FUNCTION_ERROR = "Неизвестная функция: {name}. Доступны: {available}"
UNKNOWN_SUITE_ERROR = "Неизвестный набор тождеств: {name}. Доступны: {available}"
UNKNOWN_FAMILY_ERROR = "Неизвестное семейство: {name}. Доступны: {available}"
UNKNOWN_PARAM_ERROR = "Неизвестный параметр {key} для {name}. Допустимы: {available}"
MISSING_PARAM_ERROR = "Не задан параметр {key} для {name}"
BAD_PARAM_ERROR = "Не удалось разобрать {token!r}: ожидается key=value"
BAD_VALUE_ERROR = "Значение {key}={value!r} не является числом"
NOT_INTEGER_ERROR = "Параметр {key} должен быть целым, получено {value}"
UNKNOWN_ROUTE_ERROR = "Функция {name} не имеет маршрута {route}"
NO_COMPARISON_ERROR = "Для {name} нет двух маршрутов для сравнения"
NO_ORACLE_WARNING = "для этих параметров нет независимого значения"
BAD_ORDER_ERROR = "Порядок должен быть положительным, получено {value}"
MISSING_INDEX_ERROR = "Для таблицы {family} нужен один целый максимальный индекс"
BAD_CONFIG_ERROR = "Недопустимые параметры запуска: {details}"
USAGE_ERROR_MESSAGE = "Ошибка: {error}"
INTERNAL_ERROR_MESSAGE = "Внутренняя ошибка: {error}"

# Предупреждения отчётов
DEVIATION_WARNING = "отклонение {deviation} превышает допуск {allowed}"
INEXACT_IDENTITY_WARNING = "тождество должно проверяться в точной арифметике"

# Текстовый формат
PLAIN_REPORT = (
    "{command} [{params}] {status}\n"
    "  value          = {value}\n"
    "  error_estimate = {error_estimate}\n"
    "  terms_used     = {terms_used} ({stop_reason})"
)
PLAIN_ORACLE = "\n  {reference:<14} = {oracle}\n  deviation      = {deviation}"
PLAIN_WARNING = "\n  warning: {warning}"
PLAIN_TABLE_ROW = "{index:>4}: {entries}"
PLAIN_SUMMARY = "{passed} PASS, {warned} WARN, {failed} FAIL"

# Шаблоны для логирования
LOG_COMMAND_STARTED = "Команда {command}: {details}"
LOG_COMMAND_FINISHED = "Команда {command} завершена с кодом {code}"
LOG_USAGE_ERROR = "Ошибка использования: {error}"
LOG_DOMAIN_ERROR = "Параметр вне области определения: {error}"
LOG_UNEXPECTED_ERROR = "Непредвиденная ошибка в команде {command}: {error}"
LOG_SUITE_FINISHED = "Набор {suite}: {passed} PASS, {failed} FAIL из {total}"
LOG_TABLE_BUILT = "Таблица {family}: {rows} строк"
